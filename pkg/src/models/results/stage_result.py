from typing import Any, Dict, Generic, Iterable, List, TypeVar

from src.models.results.types import Err, Ok

T = TypeVar("T")
E = TypeVar("E")


class StageResult(Generic[T, E]):
    """
    Successes (Ok[T]) and per-instance failures (Err[E]) of one stage over one batch, in input
    order within each list.
    """

    def __init__(self, stage_name: str, details: str = "", *, has_failed: bool = False):
        self.stage_name = stage_name
        self.details = details
        self._has_failed = has_failed
        self.success: List[Ok[T]] = []
        self.failed: List[Err[E]] = []

    def add_ok(self, value: T) -> None:
        self.success.append(Ok(value))

    def add_err(self, error: E) -> None:
        self.failed.append(Err(error))

    def extend(self, others: Iterable["StageResult[T, E]"]) -> "StageResult[T, E]":
        """Append the results of later batches, keeping their order."""
        for other in others:
            self.success.extend(other.success)
            self.failed.extend(other.failed)
            self._has_failed = self._has_failed or other.has_failed
        return self

    def success_values(self) -> List[T]:
        return [r.ok_value() for r in self.success]

    def failed_values(self) -> List[E]:
        return [r.err_value() for r in self.failed]

    def has_success(self) -> bool:
        return len(self.success) > 0

    def has_errors(self) -> bool:
        """Indicates if the stage encountered any instance-level errors."""
        return len(self.failed) > 0

    @property
    def has_failed(self) -> bool:
        """Indicates a failure of the stage itself, beyond instance-level errors."""
        return self._has_failed

    @has_failed.setter
    def has_failed(self, value: bool) -> None:
        self._has_failed = bool(value)

    def mark_failed(self, value: bool = True) -> None:
        self._has_failed = bool(value)

    def summary(self) -> Dict[str, Any]:
        return {
            "stage_name": self.stage_name,
            "has_failed": self._has_failed,
            "total_processed": len(self),
            "total_success": len(self.success),
            "total_failed": len(self.failed),
            "details": self.details,
        }

    def __repr__(self) -> str:
        return (
            f"StageResult(stage_name={self.stage_name}, total_processed={len(self)}, "
            f"total_success={len(self.success)}, total_failed={len(self.failed)})"
        )

    def __len__(self) -> int:
        return len(self.success) + len(self.failed)
