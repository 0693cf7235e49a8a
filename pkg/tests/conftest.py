import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hcss import AmplitudeAlphabet, build_codebook, build_lut


@pytest.fixture(scope="session")
def alphabet():
    return AmplitudeAlphabet()


@pytest.fixture(scope="session")
def book_4_7(alphabet):
    return build_codebook(alphabet, 4, 7)


@pytest.fixture(scope="session")
def lut_4_7(book_4_7):
    return build_lut(book_4_7)


@pytest.fixture(scope="session")
def book_32_56(alphabet):
    return build_codebook(alphabet, 32, 56)


@pytest.fixture(scope="session")
def lut_32_56(book_32_56):
    return build_lut(book_32_56)
