"""Shared exception types."""

from __future__ import annotations


class RadoError(Exception):
    """Base class for all library errors."""


class BudgetExceededError(RadoError):
    """An enumeration would exceed the configured candidate budget."""

    def __init__(self, projected: int, budget: int):
        self.projected = projected
        self.budget = budget
        super().__init__(
            f"enumeration refused: {projected} candidate cells exceed the budget of {budget}"
        )


class TooManyColumnsError(RadoError):
    """The columns-condition search is exponential in the column count."""

    def __init__(self, columns: int, limit: int):
        self.columns = columns
        self.limit = limit
        super().__init__(
            f"too many columns for the columns-condition search: {columns} > limit {limit}"
        )


class SystemFormatError(RadoError):
    """A system document failed to parse or violated a shape invariant."""


class DimensionMismatchError(RadoError):
    """Operands have incompatible dimensions."""


class MalformedPartitionError(RadoError):
    """A column partition does not cover the columns exactly once."""


class InvalidGeneratorsError(RadoError):
    """A generator tuple produces a non-positive element.

    Carries one violating combination: the generator index (0-based), the
    coefficient tuple applied to the later generators, and the offending value.
    """

    def __init__(
        self,
        index: int,
        lambdas: tuple[int, ...],
        value: int,
        coordinate: int | None = None,
    ):
        self.index = index
        self.lambdas = lambdas
        self.value = value
        self.coordinate = coordinate
        where = "" if coordinate is None else f"coordinate {coordinate}: "
        super().__init__(
            f"{where}invalid generators: row {index} with coefficients {lambdas} "
            f"yields {value} <= 0"
        )
