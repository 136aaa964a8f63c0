"""
Flask JSON service for tree-minor decisions, family balls and certificates
"""

import os
from datetime import datetime, timezone

from flask import request, jsonify

from config import create_app, load_settings, setup_logging, setup_rate_limiter, ensure_directories
from request_handlers import OPERATIONS

VERSION = '1.0.0'

# Initialize application components
settings = load_settings()
app = create_app(settings)
logger = setup_logging(settings.log_level, settings.log_dir)
limiter = setup_rate_limiter(app, settings.api_rate_limit)

ensure_directories(settings)
logger.info(f"Application initialized with operations: {', '.join(sorted(OPERATIONS))}")


@app.route('/health')
@limiter.exempt
def health():
    """Health check endpoint"""
    return jsonify({
        'status': 'healthy',
        'version': VERSION,
        'timestamp': datetime.now(timezone.utc).isoformat(),
        'operations': sorted(OPERATIONS),
        'settings': {
            'cert_instance_depth': settings.cert_instance_depth,
            'horizon_default': settings.horizon_default,
            'max_tree_bytes': settings.max_tree_bytes,
        },
    })


@app.route('/api/<operation>', methods=['POST'])
def generic_api(operation):
    """Dispatch a JSON request to its operation handler"""
    handler = OPERATIONS.get(operation)
    if handler is None:
        return jsonify({'error': f'Unknown operation: {operation}'}), 404

    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        return jsonify({'error': 'Request body must be a JSON object'}), 400

    logger.info(f"API called for: {operation}")
    try:
        return handler(data, settings)
    except ValueError as e:
        logger.info(f"Rejected {operation} request: {e}")
        return jsonify({'error': str(e)}), 400
    except RecursionError:
        logger.error(f"Recursion limit reached in {operation}")
        return jsonify({'error': 'Input too deep'}), 400
    except Exception as e:
        logger.error(f"Error in API for {operation}: {e}")
        return jsonify({'error': 'Internal server error'}), 500


# Error handlers
@app.errorhandler(413)
def too_large(e):
    return jsonify({'error': f'Request too large. Maximum size is {settings.max_tree_bytes} bytes.'}), 413


@app.errorhandler(429)
def ratelimit_handler(e):
    return jsonify({'error': 'Rate limit exceeded. Please try again later.'}), 429


@app.errorhandler(404)
def not_found(e):
    return jsonify({'error': 'Not found'}), 404


@app.errorhandler(500)
def internal_error(e):
    logger.error(f"Internal server error: {e}")
    return jsonify({'error': 'Internal server error'}), 500


if __name__ == '__main__':
    app.run(
        host='0.0.0.0',
        port=5000,
        debug=os.environ.get('FLASK_DEBUG', 'false').lower() == 'true'
    )
