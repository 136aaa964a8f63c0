"""
JSON API handlers: one function per operation, returning a Flask response
"""

import json
import logging
from typing import Any, Dict

from flask import current_app, jsonify

from config import Settings
from ordinal import compare, fund_seq, parse_ordinal, format_ordinal
from tree import RootedTree, tree_from_json
from family import ball, family_embed_map, format_address, parse_address
from embed import TreeMinorSolver, validate_witness
from certify import certify_nonembed, check_certificate, expand_all, certificate_to_json
from file_processors import parse_tree_payload
from formatters import format_tree, format_tree_summary, format_ordinal_info, format_certificate_summary
from utils import parse_flag, parse_mode, parse_non_negative_int, parse_positive_int

logger = logging.getLogger(__name__)

# balls are binary trees of height radius: at most 2^17 - 1 vertices
MAX_BUILD_RADIUS = 16
MAX_EXPAND = 16
MAX_CERTIFICATE_NODES = 100_000


def _required(data: Dict, key: str) -> Any:
    value = data.get(key)
    if value is None or (isinstance(value, str) and not value.strip()):
        raise ValueError(f"'{key}' is required")
    return value


def _tree_from_payload(value: Any) -> RootedTree:
    """Tree given as parenthesis text, JSON text, or a {'parent': [...]} object"""
    if isinstance(value, dict):
        return tree_from_json(json.dumps(value))
    if isinstance(value, str):
        return parse_tree_payload(value)
    raise ValueError("Trees must be given as text or as a {'parent': [...]} object")


def handle_build(data: Dict, settings: Settings):
    alpha = parse_ordinal(_required(data, 'alpha'))
    radius = parse_non_negative_int(_required(data, 'radius'), 'radius')
    fmt = data.get('format', 'text')

    if radius > MAX_BUILD_RADIUS:
        return jsonify({'error': f'radius is limited to {MAX_BUILD_RADIUS}'}), 400

    t = ball(alpha, radius)
    logger.info(f"Built ball({format_ordinal(alpha)}, {radius}) with {t.n} vertices")
    return jsonify({
        'success': True,
        'alpha': format_ordinal(alpha),
        'radius': radius,
        'format': fmt,
        'tree': format_tree(t, fmt),
        'summary': format_tree_summary(t),
    })


def handle_embed(data: Dict, settings: Settings):
    guest = _tree_from_payload(_required(data, 'guest'))
    host = _tree_from_payload(_required(data, 'host'))
    mode = parse_mode(data.get('mode', 'rooted'))

    decision = TreeMinorSolver(host).decide(guest, mode)
    logger.info(f"Embed request ({mode.value}): {guest.n} into {host.n} vertices -> {decision.status.value}")
    response = {'success': True, 'mode': mode.value, 'result': decision.status.value}
    if decision.embeds and parse_flag(data.get('witness', False)):
        response['witness'] = decision.to_dict()['witness']
        response['validated'] = validate_witness(guest, host, decision.witness)
    return jsonify(response)


def handle_family_embed(data: Dict, settings: Settings):
    alpha = parse_ordinal(_required(data, 'alpha'))
    beta = parse_ordinal(_required(data, 'beta'))
    address = parse_address(_required(data, 'addr'))
    image = family_embed_map(alpha, beta, address)
    return jsonify({
        'success': True,
        'alpha': format_ordinal(alpha),
        'beta': format_ordinal(beta),
        'addr': format_address(address),
        'image': format_address(image),
    })


def handle_certify(data: Dict, settings: Settings):
    alpha = parse_ordinal(_required(data, 'alpha'))
    beta = parse_ordinal(_required(data, 'beta'))
    expand = parse_non_negative_int(data.get('expand', 0), 'expand')
    if expand > MAX_EXPAND:
        return jsonify({'error': f'expand is limited to {MAX_EXPAND}'}), 400

    certificate = certify_nonembed(beta, alpha, max_nodes=MAX_CERTIFICATE_NODES)
    if expand:
        certificate = expand_all(certificate, expand)
    report = check_certificate(certificate, settings.cert_instance_depth)
    if not report.accepted:
        logger.error(f"Generated certificate failed its self-check: {report.reason}")
        return jsonify({'error': 'Certificate self-check failed', 'check': report.to_dict()}), 500

    # one nesting level per proof step, written without recursion
    summary = json.dumps(format_certificate_summary(certificate, report))
    body = f'{{"success": true, "certificate": {certificate_to_json(certificate, indent=None)}, "summary": {summary}}}'
    return current_app.response_class(body, mimetype='application/json')


def handle_ordinal(data: Dict, settings: Settings):
    action = data.get('action', 'parse')
    first = parse_ordinal(_required(data, 'ordinal'))

    if action in ('parse', 'classify'):
        return jsonify({'success': True, **format_ordinal_info(first)})
    if action == 'compare':
        other = parse_ordinal(_required(data, 'other'))
        return jsonify({'success': True, 'result': compare(first, other).name})
    if action == 'fundseq':
        i = parse_positive_int(_required(data, 'other'), 'i')
        return jsonify({'success': True, 'result': format_ordinal(fund_seq(first, i))})
    return jsonify({'error': f'Unknown action: {action}'}), 400


OPERATIONS = {
    'build': handle_build,
    'embed': handle_embed,
    'family-embed': handle_family_embed,
    'certify': handle_certify,
    'ordinal': handle_ordinal,
}
