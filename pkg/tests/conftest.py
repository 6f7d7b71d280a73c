"""
Pytest configuration and fixtures
"""
import logging

import pytest

from app.core.cache import cache
from app.models.class_table import ClassTable
from app.models.types import GroundType
from app.utils.parser import parse_program, parse_type

EMPTY_PROGRAM = ""
ONE_CLASS_PROGRAM = "class C<T> extends Object {}\n"
TWO_CLASS_PROGRAM = "class C<T> extends Object {}\nclass D<T> extends Object {}\n"
CHAIN_PROGRAM = (
    "class A extends Object {}\n"
    "class B extends A {}\n"
    "class C<T> extends Object {}\n"
)


@pytest.fixture(autouse=True)
def clear_cache():
    """Clear cache before each test"""
    cache.clear()
    yield
    cache.clear()


@pytest.fixture(autouse=True)
def restore_logging():
    """Commands reconfigure the root logger; put pytest's handlers back afterwards"""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def empty_table() -> ClassTable:
    return parse_program(EMPTY_PROGRAM)


@pytest.fixture
def one_class() -> ClassTable:
    return parse_program(ONE_CLASS_PROGRAM)


@pytest.fixture
def two_class() -> ClassTable:
    return parse_program(TWO_CLASS_PROGRAM)


@pytest.fixture
def chain_table() -> ClassTable:
    return parse_program(CHAIN_PROGRAM)


@pytest.fixture(params=["empty", "one_class", "two_class", "chain"])
def any_table(request) -> ClassTable:
    sources = {
        "empty": EMPTY_PROGRAM,
        "one_class": ONE_CLASS_PROGRAM,
        "two_class": TWO_CLASS_PROGRAM,
        "chain": CHAIN_PROGRAM,
    }
    return parse_program(sources[request.param])


@pytest.fixture
def ty(one_class):
    """Parse a type expression over the one-class table"""
    def parse(text: str, table: ClassTable = None) -> GroundType:
        return parse_type(text, table or one_class)

    return parse


@pytest.fixture
def write_program(tmp_path):
    """Write a declaration file and return its path"""
    def write(source: str, name: str = "program.sub"):
        path = tmp_path / name
        path.write_text(source)
        return path

    return write
