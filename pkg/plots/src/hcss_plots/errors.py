class SchemaMismatch(Exception):
    """Input CSV does not match the schema of the requested figure kind."""
