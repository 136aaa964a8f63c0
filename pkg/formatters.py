"""
Formatting utilities for trees, decisions, certificates and verification records
"""

from typing import Dict, List

from ordinal import Ordinal, classify, finite_value, format_ordinal, is_finite
from tree import RootedTree, serialize_tree, to_dot, tree_to_json, strahler
from embed import EmbedDecision
from certify import Certificate, CheckReport, certificate_depth

TREE_FORMATS = ('text', 'json', 'dot')


def format_tree(t: RootedTree, fmt: str = 'text') -> str:
    """Render a tree as parenthesis text, parent-array JSON or DOT"""
    if fmt == 'text':
        return serialize_tree(t)
    if fmt == 'json':
        return tree_to_json(t)
    if fmt == 'dot':
        return to_dot(t)
    raise ValueError(f"Unknown tree format {fmt!r}; choose one of {', '.join(TREE_FORMATS)}")


def format_tree_summary(t: RootedTree) -> Dict:
    leaves = sum(1 for vertex in range(t.n) if not t.children[vertex])
    return {
        'vertices': t.n,
        'height': max(t.depth) if t.n else 0,
        'leaves': leaves,
        'strahler': strahler(t),
    }


def format_ordinal_info(a: Ordinal) -> Dict:
    """Canonical notation, class and (for finite ordinals) the integer value"""
    info = {
        'ordinal': format_ordinal(a),
        'kind': classify(a).value,
        'finite': is_finite(a),
    }
    if is_finite(a):
        info['value'] = finite_value(a)
    return info


def format_decision_line(decision: EmbedDecision) -> str:
    if decision.embeds:
        return "Embeds"
    if decision.horizon is not None:
        return f"NotFoundUpTo(horizon={decision.horizon})"
    return "NotEmbeddable"


def format_certificate_summary(c: Certificate, report: CheckReport) -> Dict:
    beta, alpha = c.pair_text()
    summary = {
        'pair': [beta, alpha],
        'rule': c.rule.value,
        'depth': certificate_depth(c),
        'check': report.to_dict(),
    }
    return summary


def format_record_line(record: Dict) -> str:
    """One-line summary of a verification record"""
    positive = record['positive']
    negative = record['negative']
    if 'min_host_radius' in positive:
        positive_text = f"D={positive['min_host_radius']}"
    else:
        positive_text = f"not found <= {positive['not_found_up_to']}"
    if 'refutation_radius' in negative:
        negative_text = f"d_w={negative['refutation_radius']}"
    else:
        negative_text = f"no finite refutation <= {negative['no_finite_refutation_up_to']}"
    return (f"({record['alpha']}, {record['beta']}): {positive_text}; {negative_text}; "
            f"certificate {record['certificate']['status']}")


def format_summary_lines(summary: Dict) -> List[str]:
    return [f"{key.replace('_', ' ')}: {value}" for key, value in summary.items()]
