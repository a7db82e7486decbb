"""
問題インスタンスとノード順序
文字コストの正規化、無限r分木のノード識別子、全順序比較
"""

import logging
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import List, NamedTuple, Sequence, Tuple, Union

from .errors import InstanceValidationError

logger = logging.getLogger(__name__)

RawCost = Union[int, Fraction, Decimal, float, str]


class NodeRef(NamedTuple):
    """無限r分木のノード（親ランク・子番号・深さ）

    Field order is (depth, parent, child_index) so that plain tuple comparison
    is the node order: depth first, then parent rank, then child index.
    """
    depth: int
    parent: int
    child_index: int


# Root: rank 1, no parent.
ROOT = NodeRef(depth=0, parent=0, child_index=0)


def node_compare(a: NodeRef, b: NodeRef) -> int:
    """ノードの全順序比較（-1 / 0 / 1）"""
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


@dataclass(frozen=True)
class Instance:
    """検証済みの問題インスタンス

    costs are the sorted letter lengths scaled by ``denominator`` to integers;
    the original rationals are ``costs[i] / denominator``.
    """
    costs: Tuple[int, ...]
    n: int
    denominator: int = 1

    @property
    def r(self) -> int:
        return len(self.costs)

    @property
    def m_min(self) -> int:
        """最小の内部ノード数 ⌈(n-1)/(r-1)⌉"""
        if self.n <= 1:
            return 0
        return -(-(self.n - 1) // (self.r - 1))

    @property
    def original_costs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self.denominator) for c in self.costs)

    def letter_cost(self, i: int) -> int:
        """i番目の文字のコスト（1始まり）"""
        return self.costs[i - 1]


def _to_fraction(value: RawCost) -> Fraction:
    if isinstance(value, bool):
        raise InstanceValidationError(
            f"letter cost must be a number, got {value!r}",
            details={'value': repr(value)}
        )
    if isinstance(value, str):
        return parse_cost(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InstanceValidationError(
                f"letter cost must be finite, got {value!r}",
                details={'value': repr(value)}
            )
        # shortest decimal repr, not the binary expansion
        return Fraction(repr(value))
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise InstanceValidationError(
                f"letter cost must be finite, got {value!r}",
                details={'value': str(value)}
            )
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise InstanceValidationError(
        f"letter cost must be rational, got {type(value).__name__}",
        details={'value': repr(value)}
    )


def parse_cost(text: str) -> Fraction:
    """コスト文字列を厳密に解析（"2", "0.5", "1/2"）"""
    token = text.strip()
    if not token:
        raise InstanceValidationError("empty letter cost", details={'value': text})
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError) as e:
        raise InstanceValidationError(
            f"cannot parse letter cost {text!r}: {e}",
            details={'value': text}
        ) from e
    return value


def parse_costs(text: str) -> List[Fraction]:
    """カンマ区切りのコスト列を解析"""
    return [parse_cost(token) for token in text.split(',')]


def validate_instance(costs_raw: Sequence[RawCost], n: int) -> Instance:
    """インスタンスを検証して正規化

    Costs are sorted ascending and multiplied by the least common denominator,
    so every depth the engine compares is an exact integer.
    The scaled costs are not reduced to coprime integers: (2, 4) stays (2, 4)
    and ``denominator`` stays the lcm of the input denominators.
    """
    costs = [_to_fraction(c) for c in costs_raw]

    if len(costs) < 2:
        raise InstanceValidationError(
            f"alphabet needs at least 2 letters (r >= 2), got r={len(costs)}",
            details={'r': len(costs)}
        )
    bad = [str(c) for c in costs if c <= 0]
    if bad:
        raise InstanceValidationError(
            f"letter costs must be strictly positive, got {', '.join(bad)}",
            details={'non_positive': bad}
        )
    if isinstance(n, bool) or not isinstance(n, int):
        raise InstanceValidationError(
            f"word count must be an integer, got {n!r}",
            details={'n': repr(n)}
        )
    if n < 1:
        raise InstanceValidationError(
            f"word count must be at least 1 (n >= 1), got n={n}",
            details={'n': n}
        )

    denominator = math.lcm(*(c.denominator for c in costs))
    scaled = tuple(sorted(int(c * denominator) for c in costs))

    instance = Instance(costs=scaled, n=n, denominator=denominator)
    logger.debug(f"Instance validated: r={instance.r}, costs={scaled}, "
                 f"denominator={denominator}, n={n}")
    return instance
