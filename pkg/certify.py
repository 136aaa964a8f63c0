"""
Finite certificates for T_beta not embedding into T_alpha (alpha < beta):
generation mirrors the induction over (beta, alpha); checking re-verifies
every node's side conditions.

Proof chains grow linearly with finite indices ((n+1, n) is n nodes deep),
so every walk over a certificate uses an explicit work stack.
"""

import json
import logging
from enum import Enum
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple, Union

from ordinal import (
    Ordinal, OrdinalError, OrdinalKind, ONE,
    classify, predecessor, fund_seq, least_index, from_int, parse_ordinal, format_ordinal,
)

logger = logging.getLogger(__name__)

DEFAULT_INSTANCE_DEPTH = 8

TWO = from_int(2)

Pair = Tuple[Ordinal, Ordinal]


class CertificateError(ValueError):
    """Raised for structurally malformed certificates or invalid requests"""


class Rule(str, Enum):
    BASE = 'base'
    REDUCE = 'reduce'
    LIMIT = 'limit'
    PIGEONHOLE = 'pigeonhole'
    BRANCHES = 'branches'


@dataclass
class Certificate:
    """
    One proof node. Concrete nodes claim T_beta does not embed into T_alpha.
    A schematic BRANCHES node (alpha is None) claims T_beta embeds into none
    of its own branches T_{beta[i]}; its children are expanded instances,
    listed in `instances`.
    """
    rule: Rule
    beta: Ordinal
    alpha: Optional[Ordinal] = None
    param: Union[int, Ordinal, None] = None
    children: List['Certificate'] = field(default_factory=list)
    schematic: bool = False
    instances: List[int] = field(default_factory=list)

    def pair_text(self) -> Tuple[str, str]:
        beta = format_ordinal(self.beta)
        if self.alpha is None:
            return beta, f"{beta}[i]"
        return beta, format_ordinal(self.alpha)

    def fields(self) -> Dict[str, Any]:
        """This node's JSON fields, with an empty children list"""
        data = {
            'rule': self.rule.value,
            'pair': list(self.pair_text()),
            'children': [],
            'schematic': self.schematic,
        }
        if isinstance(self.param, Ordinal):
            data['param'] = format_ordinal(self.param)
        elif self.param is not None:
            data['param'] = self.param
        if self.schematic:
            data['instances'] = list(self.instances)
        return data

    def to_dict(self) -> Dict:
        root = self.fields()
        stack = [(self, root)]
        while stack:
            node, data = stack.pop()
            for child in node.children:
                child_data = child.fields()
                data['children'].append(child_data)
                stack.append((child, child_data))
        return root


@dataclass
class CheckReport:
    accepted: bool
    path: Tuple[int, ...] = ()
    reason: str = ''
    pair: Optional[Tuple[str, str]] = None
    nodes_checked: int = 0

    def __bool__(self):
        return self.accepted

    def to_dict(self) -> Dict:
        data = {'accepted': self.accepted, 'nodes_checked': self.nodes_checked}
        if not self.accepted:
            data.update({'path': list(self.path), 'reason': self.reason,
                         'pair': list(self.pair) if self.pair else None})
        return data


# Generation

def _schematic_branches(alpha: Ordinal) -> Certificate:
    return Certificate(Rule.BRANCHES, alpha, schematic=True)


def _induction_step(beta: Ordinal, alpha: Ordinal) -> Tuple[Certificate, Optional[Pair]]:
    """The node for (beta, alpha) and the pair its premise has to prove, if any"""
    if beta == TWO and alpha == ONE:
        return Certificate(Rule.BASE, beta, alpha), None

    if classify(beta) is OrdinalKind.LIMIT:
        j = least_index(beta, alpha)
        return Certificate(Rule.LIMIT, beta, alpha, param=j), (fund_seq(beta, j), alpha)

    delta = predecessor(beta)
    if alpha < delta:
        return Certificate(Rule.REDUCE, beta, alpha, param=delta), (delta, alpha)

    # beta = alpha + 1: T_beta must avoid every branch of T_alpha
    if classify(alpha) is OrdinalKind.SUCCESSOR:
        return Certificate(Rule.PIGEONHOLE, beta, alpha), (alpha, predecessor(alpha))
    return Certificate(Rule.PIGEONHOLE, beta, alpha, children=[_schematic_branches(alpha)]), None


def certify_nonembed(beta: Ordinal, alpha: Ordinal, max_nodes: Optional[int] = None) -> Certificate:
    """Certificate that T_beta does not embed into T_alpha"""
    if not alpha:
        raise CertificateError("T_0 is undefined; alpha must be >= 1")
    if not alpha < beta:
        raise CertificateError(f"Need alpha < beta, got alpha={format_ordinal(alpha)} beta={format_ordinal(beta)}")

    root, pending = _induction_step(beta, alpha)
    node, nodes = root, 1
    while pending is not None:
        if max_nodes is not None and nodes >= max_nodes:
            raise CertificateError(f"Certificate for ({format_ordinal(beta)}, {format_ordinal(alpha)}) "
                                   f"needs more than {max_nodes} nodes")
        child, pending = _induction_step(*pending)
        node.children.append(child)
        node, nodes = child, nodes + 1
    return root


def locate(c: Certificate, path: Sequence[int]) -> Certificate:
    node = c
    for index in path:
        if not 0 <= index < len(node.children):
            raise CertificateError(f"No child {index} at path {list(path)}")
        node = node.children[index]
    return node


def expand_schematic(c: Certificate, node: Union[Certificate, Sequence[int]], i: int) -> Certificate:
    """Concrete certificate for instance i of a schematic node (given by object or child path)"""
    if not isinstance(node, Certificate):
        node = locate(c, node)
    if not node.schematic:
        raise CertificateError(f"Node {node.pair_text()} is not schematic")
    if i < 1:
        raise CertificateError(f"Instance index must be >= 1, got {i}")
    return certify_nonembed(node.beta, fund_seq(node.beta, i))


def _clone(c: Certificate) -> Certificate:
    root = replace(c, children=[], instances=list(c.instances))
    stack = [(c, root)]
    while stack:
        source, target = stack.pop()
        for child in source.children:
            duplicate = replace(child, children=[], instances=list(child.instances))
            target.children.append(duplicate)
            stack.append((child, duplicate))
    return root


def expand_all(c: Certificate, k: int) -> Certificate:
    """Copy of c with instances 1..k attached to every schematic node it contains"""
    expanded = _clone(c)
    stack = [expanded]
    while stack:
        node = stack.pop()
        if node.schematic:
            node.instances = list(range(1, k + 1))
            node.children = [expand_schematic(expanded, node, i) for i in node.instances]
            continue
        stack.extend(node.children)
    return expanded


def certificate_depth(c: Certificate) -> int:
    depth = 0
    level = [c]
    while level:
        depth += 1
        level = [child for node in level for child in node.children]
    return depth


# Checking

class _Rejection(Exception):
    def __init__(self, path: Tuple[int, ...], node: Certificate, reason: str):
        super().__init__(reason)
        self.path = path
        self.node = node
        self.reason = reason


_VISIT, _VERIFIED, _GENERATED = 'visit', 'verified', 'generated'


class CertificateChecker:
    """Local rule checks at every node; schematic nodes are checked on instances 1..k"""

    def __init__(self, instance_depth: int = DEFAULT_INSTANCE_DEPTH):
        self.instance_depth = instance_depth
        self.verified: Set[Pair] = set()
        self.nodes_checked = 0

    def check(self, c: Certificate) -> CheckReport:
        try:
            self._walk(c, ())
        except _Rejection as rejection:
            logger.info(f"Certificate rejected at {list(rejection.path)}: {rejection.reason}")
            return CheckReport(False, rejection.path, rejection.reason,
                               rejection.node.pair_text(), self.nodes_checked)
        return CheckReport(True, nodes_checked=self.nodes_checked)

    def _walk(self, root: Certificate, path: Tuple[int, ...]):
        """Preorder over the stored tree; a premise pair is memoised once its subtree has passed"""
        stack = [(_VISIT, root, path, None)]
        while stack:
            task, node, node_path, pair = stack.pop()
            if task == _VISIT:
                stack.extend(reversed(self._visit(node, node_path)))
            elif task == _VERIFIED:
                self.verified.add(pair)
            else:
                self._check_generated(node, node_path)

    @staticmethod
    def _reject(node: Certificate, path: Tuple[int, ...], reason: str):
        raise _Rejection(path, node, reason)

    def _visit(self, node: Certificate, path: Tuple[int, ...]) -> List[Tuple]:
        self.nodes_checked += 1
        if not isinstance(node, Certificate) or not isinstance(node.rule, Rule) \
                or not isinstance(node.beta, Ordinal):
            raise CertificateError(f"Malformed certificate node at {list(path)}")

        def reject(reason: str):
            self._reject(node, path, reason)

        if node.rule is Rule.BRANCHES:
            return self._visit_branches(node, path, reject)
        if node.schematic:
            reject(f"{node.rule.value} node cannot be schematic")
        if not isinstance(node.alpha, Ordinal) or not node.alpha:
            reject("concrete node needs alpha >= 1")
        beta, alpha = node.beta, node.alpha
        if not alpha < beta:
            reject("pair must satisfy alpha < beta")

        if node.rule is Rule.BASE:
            if not (beta == TWO and alpha == ONE):
                reject("base rule only covers the pair (2, 1)")
            if node.children or node.param is not None:
                reject("base node takes no premises")
            return []

        if len(node.children) != 1:
            reject(f"{node.rule.value} node needs exactly one premise")
        child = node.children[0]

        if node.rule is Rule.REDUCE:
            if classify(beta) is not OrdinalKind.SUCCESSOR:
                reject("reduce rule needs a successor beta")
            delta = predecessor(beta)
            if node.param != delta:
                reject("reduce parameter must be the predecessor of beta")
            if not alpha < delta:
                reject("reduce needs alpha below the predecessor of beta")
            self._expect_pair(child, delta, alpha, reject)
        elif node.rule is Rule.LIMIT:
            if classify(beta) is not OrdinalKind.LIMIT:
                reject("limit rule needs a limit beta")
            j = node.param
            if not isinstance(j, int) or isinstance(j, bool) or j < 1:
                reject("limit parameter must be a positive index")
            branch = fund_seq(beta, j)
            if not alpha < branch:
                reject(f"branch index {j} does not exceed alpha")
            self._expect_pair(child, branch, alpha, reject)
        elif node.rule is Rule.PIGEONHOLE:
            if node.param is not None:
                reject("pigeonhole node takes no parameter")
            if classify(beta) is not OrdinalKind.SUCCESSOR or predecessor(beta) != alpha:
                reject("pigeonhole needs beta = alpha + 1")
            if alpha == ONE:
                reject("pigeonhole needs alpha >= 2; (2, 1) is the base")
            if classify(alpha) is OrdinalKind.SUCCESSOR:
                self._expect_pair(child, alpha, predecessor(alpha), reject)
            elif child.rule is not Rule.BRANCHES or not child.schematic or child.beta != alpha:
                reject("pigeonhole over a limit alpha needs a schematic branches premise")

        return [(_VISIT, child, path + (0,), None)]

    def _expect_pair(self, child: Certificate, beta: Ordinal, alpha: Ordinal, reject):
        if child.schematic or child.rule is Rule.BRANCHES:
            reject("premise must be a concrete node")
        if child.beta != beta or child.alpha != alpha:
            reject(f"premise must prove ({format_ordinal(beta)}, {format_ordinal(alpha)})")

    def _visit_branches(self, node: Certificate, path: Tuple[int, ...], reject) -> List[Tuple]:
        if not node.schematic:
            reject("branches node must be schematic")
        if node.alpha is not None or node.param is not None:
            reject("branches node carries no alpha or parameter")
        if classify(node.beta) is not OrdinalKind.LIMIT:
            reject("branches node needs a limit ordinal")
        if len(node.instances) != len(node.children) or len(set(node.instances)) != len(node.instances):
            reject("expanded instances must be distinct and match the children")

        tasks = []
        for index, (i, child) in enumerate(zip(node.instances, node.children)):
            if not isinstance(i, int) or isinstance(i, bool) or i < 1:
                reject(f"instance index {i!r} must be a positive integer")
            pair = (node.beta, fund_seq(node.beta, i))
            self._expect_pair(child, *pair, reject)
            tasks.append((_VISIT, child, path + (index,), None))
            tasks.append((_VERIFIED, None, None, pair))
        tasks.append((_GENERATED, node, path, None))
        return tasks

    def _check_generated(self, node: Certificate, path: Tuple[int, ...]):
        for i in range(1, self.instance_depth + 1):
            pair = (node.beta, fund_seq(node.beta, i))
            if pair in self.verified:
                continue
            try:
                self._walk(certify_nonembed(*pair), path + (-i,))
            except _Rejection as rejection:
                self._reject(node, path, f"instance {i} failed: {rejection.reason}")
            self.verified.add(pair)


def check_certificate(c: Certificate, instance_depth: int = DEFAULT_INSTANCE_DEPTH) -> CheckReport:
    """Accept, or report the first failing node (negative path entries are generated instances)"""
    return CertificateChecker(instance_depth).check(c)


# JSON

def _json_pieces(node: Certificate, depth: int, indent: Optional[int]) -> List[Union[str, Tuple[Certificate, int]]]:
    """Text of one node object, with (child, depth) placeholders inside its children list"""
    def newline(level: int) -> str:
        return '' if indent is None else '\n' + ' ' * (indent * level)

    item_separator = ', ' if indent is None else ','
    pieces: List[Union[str, Tuple[Certificate, int]]] = ['{']
    for position, (key, value) in enumerate(node.fields().items()):
        pieces.append(f"{item_separator if position else ''}{newline(depth + 1)}{json.dumps(key)}: ")
        if key != 'children':
            pieces.append(json.dumps(value, indent=indent).replace('\n', newline(depth + 1)))
        elif not node.children:
            pieces.append('[]')
        else:
            pieces.append('[')
            for index, child in enumerate(node.children):
                pieces.append(f"{item_separator if index else ''}{newline(depth + 2)}")
                pieces.append((child, depth + 2))
            pieces.append(f"{newline(depth + 1)}]")
    pieces.append(f"{newline(depth)}}}")
    return pieces


def certificate_to_json(c: Certificate, indent: Optional[int] = 2) -> str:
    """Nested node JSON in json.dumps layout, written without recursion"""
    output: List[str] = []
    stack: List[Union[str, Tuple[Certificate, int]]] = [(c, 0)]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            output.append(item)
        else:
            stack.extend(reversed(_json_pieces(item[0], item[1], indent)))
    return ''.join(output)


def _node_from_dict(data: Dict) -> Certificate:
    try:
        rule = Rule(data['rule'])
        beta_text, alpha_text = data['pair']
        beta = parse_ordinal(beta_text)
        schematic = bool(data.get('schematic', False))
        alpha = None if rule is Rule.BRANCHES else parse_ordinal(alpha_text)
        param = data.get('param')
        if rule is Rule.REDUCE and param is not None:
            param = parse_ordinal(str(param))
        instances = [int(i) for i in data.get('instances', [])]
        if not isinstance(data.get('children', []), list):
            raise TypeError("children must be a list")
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, OrdinalError):
            raise CertificateError(f"Bad ordinal in certificate: {e}")
        raise CertificateError(f"Malformed certificate node: {e}")
    return Certificate(rule, beta, alpha, param, [], schematic, instances)


def certificate_from_dict(data: Dict) -> Certificate:
    root = _node_from_dict(data)
    stack = [(root, data)]
    while stack:
        node, node_data = stack.pop()
        for child_data in node_data.get('children', []):
            child = _node_from_dict(child_data)
            node.children.append(child)
            stack.append((child, child_data))
    return root


def certificate_from_json(text: str) -> Certificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CertificateError(f"Invalid certificate JSON: {e}")
    except RecursionError:
        raise CertificateError("Certificate JSON is nested too deeply to decode")
    return certificate_from_dict(data)
