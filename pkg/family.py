"""
Symbolic family of infinite trees T_alpha: branch ordinals, ball
truncations, vertex addresses and the canonical embedding T_alpha -> T_beta
"""

import json
import logging
from enum import Enum
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ordinal import (
    Ordinal, OrdinalError, OrdinalKind, ONE,
    classify, predecessor, fund_seq, least_index, format_ordinal,
)
from tree import RootedTree

logger = logging.getLogger(__name__)

VertexAddress = Tuple[int, ...]


class AddressError(ValueError):
    """Raised for malformed addresses or addresses that leave the family tree"""


class EmbedMode(str, Enum):
    ROOTED = 'rooted'
    FREE = 'free'


@dataclass
class EmbeddingWitness:
    """Explicit vertex map guest -> host (host ids, or addresses for a symbolic host)"""
    mode: EmbedMode
    mapping: Dict[int, Union[int, VertexAddress]] = field(default_factory=dict)

    def to_json(self) -> str:
        pairs = []
        for guest_vertex in sorted(self.mapping):
            image = self.mapping[guest_vertex]
            pairs.append([guest_vertex, format_address(image) if isinstance(image, tuple) else image])
        return json.dumps(pairs)

    @classmethod
    def from_json(cls, text: str, mode: EmbedMode = EmbedMode.ROOTED) -> 'EmbeddingWitness':
        try:
            pairs = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"Invalid witness JSON: {e}")
        mapping = {}
        for pair in pairs:
            if not isinstance(pair, list) or len(pair) != 2:
                raise ValueError(f"Witness entries must be [guest, host] pairs, got {pair!r}")
            guest_vertex, image = pair
            mapping[int(guest_vertex)] = parse_address(image) if isinstance(image, str) else int(image)
        return cls(EmbedMode(mode), mapping)


def _check_index(alpha: Ordinal):
    if classify(alpha) is OrdinalKind.ZERO:
        raise OrdinalError("T_0 is undefined; family indices start at 1")


@lru_cache(maxsize=65536)
def branch_ordinal(alpha: Ordinal, i: int) -> Optional[Ordinal]:
    """Index of the branch attached at spine vertex v_i of T_alpha (None for the ray)"""
    _check_index(alpha)
    if i < 1:
        raise AddressError(f"Spine indices start at 1, got {i}")
    if alpha == ONE:
        return None
    if classify(alpha) is OrdinalKind.SUCCESSOR:
        return predecessor(alpha)
    return fund_seq(alpha, i)


# Addresses

def parse_address(text: str) -> VertexAddress:
    """'2,3,1' -> (2, 3, 1)"""
    try:
        address = tuple(int(part) for part in str(text).split(','))
    except ValueError:
        raise AddressError(f"Address must be comma-separated positive integers, got {text!r}")
    _check_address(address)
    return address


def format_address(address: Sequence[int]) -> str:
    return ','.join(str(part) for part in address)


def _check_address(address: Sequence[int]):
    if not address:
        raise AddressError("Address must not be empty")
    if any(not isinstance(part, int) or part < 1 for part in address):
        raise AddressError(f"Address components must be positive integers, got {tuple(address)}")


def address_depth(address: VertexAddress) -> int:
    return sum(address) - 1


def address_valid(alpha: Ordinal, address: Sequence[int]) -> bool:
    """True iff the descent described by the address only enters existing branches"""
    _check_index(alpha)
    try:
        _check_address(address)
    except AddressError:
        return False
    level = alpha
    for component in address[:-1]:
        level = branch_ordinal(level, component)
        if level is None:
            return False
    return True


def address_meet(a: VertexAddress, b: VertexAddress) -> VertexAddress:
    """Deepest common ancestor of two addresses in the same family tree"""
    _check_address(a)
    _check_address(b)
    for position, (part_a, part_b) in enumerate(zip(a, b)):
        if part_a != part_b:
            return tuple(a[:position]) + (min(part_a, part_b),)
    return tuple(a) if len(a) <= len(b) else tuple(b)


def address_leq(a: VertexAddress, b: VertexAddress) -> bool:
    """Tree-order on addresses: a lies on the path from the root to b"""
    return address_meet(a, b) == tuple(a)


# Truncations

def ball(alpha: Ordinal, d: int) -> RootedTree:
    """Vertices of T_alpha within distance d of the root, labelled by address"""
    _check_index(alpha)
    if d < 0:
        raise ValueError(f"Radius must be non-negative, got {d}")

    parent: List[Optional[int]] = []
    labels: List[VertexAddress] = []

    def grow(level: Ordinal, prefix: VertexAddress, radius: int, attach: Optional[int]):
        previous = attach
        for k in range(1, radius + 2):
            parent.append(previous)
            labels.append(prefix + (k,))
            vertex = len(parent) - 1
            if k <= radius:
                branch = branch_ordinal(level, k)
                if branch is not None:
                    grow(branch, prefix + (k,), radius - k, vertex)
            previous = vertex

    grow(alpha, (), d, None)
    logger.debug(f"ball({format_ordinal(alpha)}, {d}) has {len(parent)} vertices")
    return RootedTree(parent, labels)


@lru_cache(maxsize=65536)
def ball_size(alpha: Ordinal, d: int) -> int:
    """|ball(alpha, d)| from the size recurrence, without building the tree"""
    _check_index(alpha)
    if d < 0:
        raise ValueError(f"Radius must be non-negative, got {d}")
    total = d + 1
    for k in range(1, d + 1):
        branch = branch_ordinal(alpha, k)
        if branch is not None:
            total += ball_size(branch, d - k)
    return total


# Canonical positive embedding

def family_embed_map(alpha: Ordinal, beta: Ordinal, address: VertexAddress) -> VertexAddress:
    """
    Image of an address of T_alpha under the canonical embedding into T_beta.

    Successor levels route through the branch at v_1, limit levels through
    the first v_j whose branch index reaches alpha.
    """
    _check_index(alpha)
    if beta < alpha:
        raise OrdinalError(f"No embedding of T_{format_ordinal(alpha)} into smaller T_{format_ordinal(beta)}")
    address = tuple(address)
    if not address_valid(alpha, address):
        raise AddressError(f"Address {format_address(address)} is not valid in T_{format_ordinal(alpha)}")

    prefix: List[int] = []
    level = beta
    while level != alpha:
        if classify(level) is OrdinalKind.SUCCESSOR:
            prefix.append(1)
            level = predecessor(level)
            continue
        j = least_index(level, alpha, strict=False)
        prefix.append(j)
        level = fund_seq(level, j)
    return tuple(prefix) + address


def family_witness(alpha: Ordinal, beta: Ordinal, d: int) -> Tuple[RootedTree, EmbeddingWitness]:
    """ball(alpha, d) with its canonical embedding into the symbolic T_beta"""
    guest = ball(alpha, d)
    mapping = {vertex: family_embed_map(alpha, beta, guest.labels[vertex]) for vertex in range(guest.n)}
    return guest, EmbeddingWitness(EmbedMode.ROOTED, mapping)
