"""
A small Result type for per-instance outcomes in batch runs.
Based on https://github.com/rustedpy/result
"""
from typing import Callable, Generic, TypeAlias, TypeVar

TOK = TypeVar("TOK")
TERR = TypeVar("TERR")
U = TypeVar("U")


class Ok(Generic[TOK]):
    __slots__ = ("_value",)

    def __init__(self, value: TOK):
        self._value = value

    def is_ok(self) -> bool:
        return True

    def ok_value(self) -> TOK:
        return self._value

    def map(self, fn: Callable[[TOK], U]) -> "Ok[U]":
        return Ok(fn(self._value))

    def unwrap_or(self, default: TOK) -> TOK:
        return self._value

    def __eq__(self, other) -> bool:
        return isinstance(other, Ok) and other._value == self._value

    def __repr__(self) -> str:
        return f"Ok({self._value!r})"

    def __getstate__(self):
        return (self._value,)

    def __setstate__(self, state):
        (self._value,) = state


class Err(Generic[TERR]):
    __slots__ = ("_err",)

    def __init__(self, err: TERR):
        self._err = err

    def is_ok(self) -> bool:
        return False

    def err_value(self) -> TERR:
        return self._err

    def map(self, fn) -> "Err[TERR]":
        return self

    def unwrap_or(self, default):
        return default

    def __eq__(self, other) -> bool:
        return isinstance(other, Err) and other._err == self._err

    def __repr__(self) -> str:
        return f"Err({self._err!r})"

    def __getstate__(self):
        return (self._err,)

    def __setstate__(self, state):
        (self._err,) = state


SimpleResult: TypeAlias = Ok[TOK] | Err[TERR]
