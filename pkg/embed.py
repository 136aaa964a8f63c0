"""
Topological-minor embedding between rooted trees: exact rooted and free
decisions, witness validation, a brute-force oracle and a horizon-bounded
search into the infinite family trees
"""

import logging
from enum import Enum
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

from ordinal import Ordinal, finite_value, format_ordinal
from tree import (
    RootedTree, SubtreeStats, strahler_of,
    subtree_forms, subtree_stats, is_ancestor, meet, rerooted,
)
from family import (
    EmbedMode, EmbeddingWitness, VertexAddress,
    branch_ordinal, address_valid, address_meet, address_leq, format_address,
)
from matching import saturating_matching

logger = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 8

# size, height, leaves, strahler
Stats = Tuple[int, int, int, int]


class EmbeddingError(ValueError):
    """Raised for empty trees, oversized brute-force inputs or malformed witnesses"""


class DecisionStatus(str, Enum):
    EMBEDS = 'embeds'
    NOT_EMBEDDABLE = 'not_embeddable'
    NOT_FOUND_UP_TO = 'not_found_up_to'


@dataclass
class EmbedDecision:
    status: DecisionStatus
    witness: Optional[EmbeddingWitness] = None
    horizon: Optional[int] = None

    @property
    def embeds(self) -> bool:
        return self.status is DecisionStatus.EMBEDS

    def to_dict(self) -> Dict:
        data = {'result': self.status.value}
        if self.horizon is not None:
            data['horizon'] = self.horizon
        if self.witness is not None:
            data['mode'] = self.witness.mode.value
            data['witness'] = [
                [g, format_address(h) if isinstance(h, tuple) else h]
                for g, h in sorted(self.witness.mapping.items())
            ]
        return data


class _GuestCatalog:
    """Guest subtrees keyed by canonical form, shared across every guest a solver sees"""

    def __init__(self):
        self.children: Dict[str, Tuple[str, ...]] = {}
        self.stats: Dict[str, Stats] = {}

    def register(self, guest: RootedTree) -> List[str]:
        if guest.n == 0:
            raise EmbeddingError("Guest tree is empty")
        forms = subtree_forms(guest)
        stats = subtree_stats(guest)
        for vertex in range(guest.n):
            form = forms[vertex]
            if form not in self.children:
                self.children[form] = tuple(forms[c] for c in guest.children[vertex])
                self.stats[form] = (stats.size[vertex], stats.height[vertex],
                                    stats.leaves[vertex], stats.strahler[vertex])
        return forms


def _fits(needed: Stats, available: Stats) -> bool:
    return all(n <= a for n, a in zip(needed, available))


class TreeMinorSolver:
    """
    Embedding decisions into one fixed host tree.

    A host position is a vertex together with the neighbour it is entered
    from; its children are the other neighbours. Rooted queries enter every
    vertex from its parent, free queries start from any vertex with no
    parent. Memo tables are keyed by guest canonical form, so they stay
    valid across guests.
    """

    def __init__(self, host: RootedTree):
        if host.n == 0:
            raise EmbeddingError("Host tree is empty")
        self.host = host
        self.adjacency = [host.neighbors(v) for v in range(host.n)]
        self.catalog = _GuestCatalog()
        self._f: Dict[Tuple[str, int, Optional[int]], bool] = {}
        self._g: Dict[Tuple[str, int, Optional[int]], bool] = {}
        self._stats: Dict[Tuple[int, Optional[int]], Stats] = {}

        rooted_stats: SubtreeStats = subtree_stats(host)
        for v in range(host.n):
            self._stats[(v, host.parent[v])] = (rooted_stats.size[v], rooted_stats.height[v],
                                                rooted_stats.leaves[v], rooted_stats.strahler[v])

    def _children(self, u: int, entered_from: Optional[int]) -> List[int]:
        return [w for w in self.adjacency[u] if w != entered_from]

    def _host_stats(self, u: int, entered_from: Optional[int]) -> Stats:
        key = (u, entered_from)
        if key not in self._stats:
            kids = [self._host_stats(w, u) for w in self._children(u, entered_from)]
            if not kids:
                self._stats[key] = (1, 0, 1, 1)
            else:
                self._stats[key] = (1 + sum(k[0] for k in kids), 1 + max(k[1] for k in kids),
                                    sum(k[2] for k in kids), strahler_of([k[3] for k in kids]))
        return self._stats[key]

    def lands_at(self, form: str, u: int, entered_from: Optional[int]) -> bool:
        """g: the guest subtree embeds with its root mapped exactly to u"""
        key = (form, u, entered_from)
        cached = self._g.get(key)
        if cached is not None:
            return cached
        guest_kids = self.catalog.children[form]
        result = True
        if guest_kids:
            host_kids = self._children(u, entered_from)
            result = len(guest_kids) <= len(host_kids) and self._assign(guest_kids, host_kids, u) is not None
        self._g[key] = result
        return result

    def fits_within(self, form: str, u: int, entered_from: Optional[int]) -> bool:
        """f: the guest subtree embeds somewhere in the host subtree at u"""
        key = (form, u, entered_from)
        cached = self._f.get(key)
        if cached is not None:
            return cached
        result = False
        if _fits(self.catalog.stats[form], self._host_stats(u, entered_from)):
            result = self.lands_at(form, u, entered_from) or any(
                self.fits_within(form, w, u) for w in self._children(u, entered_from)
            )
        self._f[key] = result
        return result

    def _assign(self, guest_kids, host_kids: List[int], u: int):
        graph = {}
        for index, child_form in enumerate(guest_kids):
            options = [w for w in host_kids if self.fits_within(child_form, w, u)]
            if not options:
                return None
            graph[index] = options
        return saturating_matching(graph)

    # Witness reconstruction

    def _place(self, guest: RootedTree, forms: List[str], v: int, u: int,
               entered_from: Optional[int], mapping: Dict[int, int]):
        mapping[v] = u
        kids = guest.children[v]
        if not kids:
            return
        host_kids = self._children(u, entered_from)
        graph = {c: [w for w in host_kids if self.fits_within(forms[c], w, u)] for c in kids}
        matching = saturating_matching(graph)
        for c, w in matching.items():
            self._land(guest, forms, c, w, u, mapping)

    def _land(self, guest: RootedTree, forms: List[str], v: int, u: int,
              entered_from: Optional[int], mapping: Dict[int, int]):
        while not self.lands_at(forms[v], u, entered_from):
            u, entered_from = next(w for w in self._children(u, entered_from)
                                   if self.fits_within(forms[v], w, u)), u
        self._place(guest, forms, v, u, entered_from, mapping)

    # Queries

    def rooted(self, guest: RootedTree) -> EmbedDecision:
        forms = self.catalog.register(guest)
        root = self.host.root
        if not self.fits_within(forms[guest.root], root, None):
            logger.debug(f"No rooted embedding of {guest.n}-vertex guest into {self.host.n}-vertex host")
            return EmbedDecision(DecisionStatus.NOT_EMBEDDABLE)
        mapping: Dict[int, int] = {}
        self._land(guest, forms, guest.root, root, None, mapping)
        logger.debug(f"Rooted embedding found; memo sizes f={len(self._f)} g={len(self._g)}")
        return EmbedDecision(DecisionStatus.EMBEDS, EmbeddingWitness(EmbedMode.ROOTED, mapping))

    def free(self, guest: RootedTree) -> EmbedDecision:
        forms = self.catalog.register(guest)
        root_form = forms[guest.root]
        needed = self.catalog.stats[root_form]
        for u in range(self.host.n):
            if not _fits(needed, self._host_stats(u, None)):
                continue
            if self.lands_at(root_form, u, None):
                mapping: Dict[int, int] = {}
                self._place(guest, forms, guest.root, u, None, mapping)
                return EmbedDecision(DecisionStatus.EMBEDS, EmbeddingWitness(EmbedMode.FREE, mapping))
        return EmbedDecision(DecisionStatus.NOT_EMBEDDABLE)

    def decide(self, guest: RootedTree, mode: EmbedMode) -> EmbedDecision:
        return self.free(guest) if EmbedMode(mode) is EmbedMode.FREE else self.rooted(guest)


def rooted_minor(guest: RootedTree, host: RootedTree) -> EmbedDecision:
    """Exact rooted topological-minor decision with a witness on success"""
    return TreeMinorSolver(host).rooted(guest)


def free_minor(guest: RootedTree, host: RootedTree) -> EmbedDecision:
    """Exact free (unrooted) topological-minor decision with a witness on success"""
    return TreeMinorSolver(host).free(guest)


def mutually_embeddable(t: RootedTree, u: RootedTree, mode: EmbedMode = EmbedMode.ROOTED) -> bool:
    """Same topological type: each tree is a topological minor of the other"""
    return TreeMinorSolver(u).decide(t, mode).embeds and TreeMinorSolver(t).decide(u, mode).embeds


# Brute-force oracle

def _brute_rooted(guest: RootedTree, host: RootedTree) -> bool:
    order = guest.preorder
    image: Dict[int, int] = {}
    used = set()

    def consistent(v: int, u: int) -> bool:
        for a, image_a in image.items():
            if is_ancestor(guest, a, v) != is_ancestor(host, image_a, u):
                return False
            if is_ancestor(guest, v, a) != is_ancestor(host, u, image_a):
                return False
            if image[meet(guest, a, v)] != meet(host, image_a, u):
                return False
        return True

    def extend(position: int) -> bool:
        if position == len(order):
            return True
        v = order[position]
        for u in range(host.n):
            if u in used or not consistent(v, u):
                continue
            image[v] = u
            used.add(u)
            if extend(position + 1):
                return True
            del image[v]
            used.discard(u)
        return False

    return extend(0)


def brute_force_minor(guest: RootedTree, host: RootedTree, mode: EmbedMode = EmbedMode.ROOTED) -> bool:
    """Exhaustive search over injective vertex maps; ground truth for trees of at most 8 vertices"""
    if guest.n > BRUTE_FORCE_LIMIT or host.n > BRUTE_FORCE_LIMIT:
        raise EmbeddingError(f"Brute force is limited to {BRUTE_FORCE_LIMIT} vertices "
                             f"(got guest={guest.n}, host={host.n})")
    if guest.n > host.n:
        return False
    if EmbedMode(mode) is EmbedMode.ROOTED:
        return _brute_rooted(guest, host)
    return any(_brute_rooted(guest, rerooted(host, r)) for r in range(host.n))


# Witness validation

def validate_witness(guest: RootedTree, host: Union[RootedTree, Ordinal], witness: EmbeddingWitness) -> bool:
    """
    Check injectivity, tree-order equivalence, meet preservation and that the
    guest root is the minimum of the image. host is a finite tree, or an
    ordinal alpha when the witness maps into the symbolic T_alpha.
    """
    mapping = witness.mapping
    if set(mapping) != set(range(guest.n)):
        raise EmbeddingError(f"Witness must map every guest vertex 0..{guest.n - 1}")

    leq: Callable
    meet_of: Callable
    if isinstance(host, Ordinal):
        for image in mapping.values():
            if not isinstance(image, tuple) or not address_valid(host, image):
                raise EmbeddingError(f"Image {image!r} is not an address of T_{format_ordinal(host)}")
        leq, meet_of = address_leq, address_meet
    else:
        for image in mapping.values():
            if not isinstance(image, int) or not 0 <= image < host.n:
                raise EmbeddingError(f"Image {image!r} out of range for host with {host.n} vertices")
        if EmbedMode(witness.mode) is EmbedMode.FREE:
            host = rerooted(host, mapping[guest.root])
        tree_host = host
        leq = lambda a, b: is_ancestor(tree_host, a, b)
        meet_of = lambda a, b: meet(tree_host, a, b)

    if len(set(mapping.values())) != guest.n:
        logger.debug("Witness is not injective")
        return False

    root_image = mapping[guest.root]
    for v in range(guest.n):
        if not leq(root_image, mapping[v]):
            logger.debug(f"Guest root image is not below the image of {v}")
            return False

    for a in range(guest.n):
        for b in range(a + 1, guest.n):
            image_a, image_b = mapping[a], mapping[b]
            if is_ancestor(guest, a, b) != leq(image_a, image_b):
                return False
            if is_ancestor(guest, b, a) != leq(image_b, image_a):
                return False
            if mapping[meet(guest, a, b)] != meet_of(image_a, image_b):
                logger.debug(f"Meet of {a} and {b} is not preserved")
                return False
    return True


# Horizon search into the infinite family tree

class FamilyMinorSearch:
    """
    Rooted embedding search into the symbolic T_alpha with every address
    component bounded by the horizon.

    A host position (beta, k) is spine vertex v_k of a copy of T_beta; its
    children are v_{k+1} (when k < horizon) and the root of the branch at v_k.
    Inside a finite-indexed T_n every subtree has Strahler number n, which
    prunes hopeless guests without losing exactness within the horizon.
    """

    def __init__(self, alpha: Ordinal, horizon: int):
        if not alpha:
            raise EmbeddingError("T_0 is undefined")
        if horizon < 1:
            raise EmbeddingError(f"Horizon must be >= 1, got {horizon}")
        self.alpha = alpha
        self.horizon = horizon
        self.catalog = _GuestCatalog()
        self._f: Dict[Tuple[str, Ordinal, int], bool] = {}
        self._g: Dict[Tuple[str, Ordinal, int], bool] = {}

    def _children(self, beta: Ordinal, k: int) -> List[Tuple[Ordinal, int]]:
        kids = []
        if k < self.horizon:
            kids.append((beta, k + 1))
        branch = branch_ordinal(beta, k)
        if branch is not None:
            kids.append((branch, 1))
        return kids

    def _hopeless(self, form: str, beta: Ordinal) -> bool:
        n = finite_value(beta)
        return n is not None and self.catalog.stats[form][3] > n

    def lands_at(self, form: str, beta: Ordinal, k: int) -> bool:
        key = (form, beta, k)
        cached = self._g.get(key)
        if cached is not None:
            return cached
        guest_kids = self.catalog.children[form]
        result = True
        if guest_kids:
            host_kids = self._children(beta, k)
            result = len(guest_kids) <= len(host_kids) and self._assign(guest_kids, host_kids) is not None
        self._g[key] = result
        return result

    def fits_within(self, form: str, beta: Ordinal, k: int) -> bool:
        key = (form, beta, k)
        cached = self._f.get(key)
        if cached is not None:
            return cached
        result = False
        if not self._hopeless(form, beta):
            # walk the spine tail iteratively
            visited = []
            for spine_index in range(k, self.horizon + 1):
                known = self._f.get((form, beta, spine_index))
                if known is not None and spine_index != k:
                    result = known
                    break
                visited.append(spine_index)
                if self.lands_at(form, beta, spine_index):
                    result = True
                    break
                branch = branch_ordinal(beta, spine_index)
                if branch is not None and self.fits_within(form, branch, 1):
                    result = True
                    break
            for spine_index in visited:
                self._f[(form, beta, spine_index)] = result
        self._f[key] = result
        return result

    def _assign(self, guest_kids, host_kids):
        graph = {}
        for index, child_form in enumerate(guest_kids):
            options = [position for position in host_kids if self.fits_within(child_form, *position)]
            if not options:
                return None
            graph[index] = options
        return saturating_matching(graph)

    def _child_address(self, address: VertexAddress, beta: Ordinal, k: int,
                       position: Tuple[Ordinal, int]) -> VertexAddress:
        if position == (beta, k + 1) and k < self.horizon:
            return address[:-1] + (k + 1,)
        return address + (1,)

    def _land(self, guest: RootedTree, forms: List[str], v: int, beta: Ordinal, k: int,
              address: VertexAddress, mapping: Dict[int, VertexAddress]):
        while not self.lands_at(forms[v], beta, k):
            for position in self._children(beta, k):
                if self.fits_within(forms[v], *position):
                    address = self._child_address(address, beta, k, position)
                    beta, k = position
                    break
        mapping[v] = address
        kids = guest.children[v]
        if not kids:
            return
        host_kids = self._children(beta, k)
        graph = {c: [p for p in host_kids if self.fits_within(forms[c], *p)] for c in kids}
        for c, position in saturating_matching(graph).items():
            child_address = self._child_address(address, beta, k, position)
            self._land(guest, forms, c, position[0], position[1], child_address, mapping)

    def search(self, guest: RootedTree) -> EmbedDecision:
        forms = self.catalog.register(guest)
        if not self.fits_within(forms[guest.root], self.alpha, 1):
            logger.warning(f"No embedding into T_{format_ordinal(self.alpha)} "
                           f"found up to horizon {self.horizon} (inconclusive)")
            return EmbedDecision(DecisionStatus.NOT_FOUND_UP_TO, horizon=self.horizon)
        mapping: Dict[int, VertexAddress] = {}
        self._land(guest, forms, guest.root, self.alpha, 1, (1,), mapping)
        return EmbedDecision(DecisionStatus.EMBEDS, EmbeddingWitness(EmbedMode.ROOTED, mapping),
                             horizon=self.horizon)


def horizon_family_minor(guest: RootedTree, alpha: Ordinal, horizon: int) -> EmbedDecision:
    """Semi-decision of guest <= T_alpha; NotFoundUpTo is inconclusive by contract"""
    return FamilyMinorSearch(alpha, horizon).search(guest)
