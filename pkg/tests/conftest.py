"""
Shared fixtures: built-in algebras and a config snapshot restored after each test.
"""
import os
from dataclasses import fields

import pytest

from config import config
from lie import LieAlgebra, load_lie_algebra

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


def data_path(*parts: str) -> str:
    return os.path.join(DATA_DIR, *parts)


@pytest.fixture(autouse=True)
def restore_config():
    """Tests may mutate the global config; put every field back afterwards"""
    saved = {f.name: getattr(config, f.name) for f in fields(config)}
    yield
    for name, value in saved.items():
        setattr(config, name, value)


@pytest.fixture(scope="session")
def aff1() -> LieAlgebra:
    return load_lie_algebra("aff1")


@pytest.fixture(scope="session")
def heisenberg3() -> LieAlgebra:
    return load_lie_algebra("heisenberg3")


@pytest.fixture(scope="session")
def sl2() -> LieAlgebra:
    return load_lie_algebra("sl2")


@pytest.fixture(scope="session")
def t2() -> LieAlgebra:
    return load_lie_algebra("t2")


@pytest.fixture(scope="session")
def abelian3() -> LieAlgebra:
    return load_lie_algebra("abelian3")
