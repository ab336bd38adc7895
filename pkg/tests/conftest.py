from pathlib import Path

import pytest

import gradedlie as gl

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# every .alg shipped fixture, by stem
ALGEBRA_FILES = ["sl2", "c2c2_abelian", "heisenberg", "heisenberg_trivial",
                 "free3_abelian", "trivial2"]


def load(stem: str) -> gl.GradedLieAlgebra:
    return gl.parse_algebra(FIXTURES / f"{stem}.alg")


@pytest.fixture(scope="session")
def sl2():
    return load("sl2")


@pytest.fixture(scope="session")
def c2c2():
    return load("c2c2_abelian")


@pytest.fixture(scope="session")
def heisenberg():
    return load("heisenberg")


@pytest.fixture(scope="session")
def heisenberg_trivial():
    return load("heisenberg_trivial")


@pytest.fixture(scope="session")
def free3():
    return load("free3_abelian")


@pytest.fixture(scope="session")
def trivial2():
    return load("trivial2")


@pytest.fixture(scope="session")
def all_algebras():
    return {stem: load(stem) for stem in ALGEBRA_FILES}
