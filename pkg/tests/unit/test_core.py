"""
Unit tests for configuration, caching, logging and the error hierarchy
"""
import json
import logging

import pytest

from app.core import cache as cache_module
from app.core.cache import InMemoryCache, cache_key
from app.core.config import Settings
from app.core.exceptions import (
    EXIT_BUDGET,
    EXIT_INTERNAL,
    EXIT_NEGATIVE,
    EXIT_OK,
    EXIT_USAGE,
    AntisymmetryError,
    ArityError,
    BudgetExceededError,
    DeclarationError,
    ParseError,
    SubtypingError,
    UnknownClassError,
)
from app.core.logging_config import JSONFormatter, setup_logging


class TestInMemoryCache:
    """Tests for the closure cache"""

    def test_get_or_set_computes_once(self):
        store = InMemoryCache(max_entries=4)
        calls = []

        def compute():
            calls.append(1)
            return frozenset({1})

        assert store.get_or_set(cache_key("closure", 1), compute) == {1}
        assert store.get_or_set(cache_key("closure", 1), compute) == {1}
        assert len(calls) == 1
        assert store.hits == 1

    def test_evicts_least_recently_used(self):
        store = InMemoryCache(max_entries=2)
        store.set("a", 1)
        store.set("b", 2)
        store.get("a")
        store.set("c", 3)
        assert store.get("b") is None
        assert store.get("a") == 1
        assert len(store) == 2

    def test_delete_and_clear(self):
        store = InMemoryCache()
        store.set("a", 1)
        store.delete("a")
        assert store.get("a") is None
        store.set("b", 2)
        store.clear()
        assert len(store) == 0
        assert store.misses == 0

    def test_disabled(self, monkeypatch):
        monkeypatch.setattr(cache_module.settings, "CACHE_ENABLED", False)
        store = InMemoryCache()
        store.set("a", 1)
        assert store.get("a") is None
        assert len(store) == 0

    def test_key_is_hashable_tuple(self):
        assert cache_key("closure", frozenset({1}), 2) == ("closure", frozenset({1}), 2)


class TestSettings:
    """Tests for environment settings"""

    def test_defaults(self):
        settings = Settings()
        assert settings.CARRIER_BUDGET > 0
        assert settings.PROG_NAME == "subop"
        assert settings.LOG_FORMAT in ("plain", "json")
        assert settings.MAX_TYPE_DEPTH >= 1
        assert settings.TYPE_MEMO_MAX_ENTRIES >= 1


class TestLogging:
    """Tests for structured logging"""

    def test_json_formatter_includes_extra_fields(self):
        record = logging.LogRecord("app.services.morphisms", logging.INFO, __file__, 10, "step done", (), None)
        record.iteration = 2
        record.carrier_size = 23
        payload = json.loads(JSONFormatter().format(record))
        assert payload["message"] == "step done"
        assert payload["level"] == "INFO"
        assert payload["iteration"] == 2
        assert payload["carrier_size"] == 23
        assert "args" not in payload

    def test_setup_logging_writes_to_stderr(self, capsys):
        setup_logging(level="INFO", fmt="json")
        logging.getLogger("app.test").info("hello", extra={"iteration": 1})
        captured = capsys.readouterr()
        assert captured.out == ""
        assert json.loads(captured.err.strip())["iteration"] == 1

    def test_unknown_level_falls_back_to_warning(self):
        assert setup_logging(level="verbose").level == logging.WARNING


class TestExceptions:
    """Tests for the error hierarchy"""

    def test_exit_statuses(self):
        assert SubtypingError().exit_status == EXIT_NEGATIVE
        assert ParseError("bad").exit_status == EXIT_USAGE
        assert DeclarationError("bad").exit_status == EXIT_USAGE
        assert UnknownClassError("D").exit_status == EXIT_USAGE
        assert ArityError("bad").exit_status == EXIT_USAGE
        assert AntisymmetryError("C<N>", "C<O>").exit_status == EXIT_NEGATIVE
        assert BudgetExceededError(2, 23, 10).exit_status == EXIT_BUDGET

    def test_exit_statuses_are_disjoint(self):
        assert len({EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET, EXIT_INTERNAL}) == 5

    def test_parse_error_position(self):
        error = ParseError("expected '{'", line=3, column=7)
        assert str(error) == "3:7: expected '{'"

    @pytest.mark.parametrize("error", [ParseError("x"), DeclarationError("x"), UnknownClassError("D"), ArityError("x")])
    def test_usage_errors_are_value_errors(self, error):
        assert isinstance(error, ValueError)

    def test_budget_message(self):
        assert "23" in str(BudgetExceededError(2, 23, 10))
