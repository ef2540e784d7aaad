"""
Frattini service - JSON API over the permutation-group toolkit

Exposes the converse check, certificate generation and certificate checking
over HTTP, and lists sweep runs recorded in the ledger database.

Endpoints:
- GET  /api/catalog
- POST /api/verify
- POST /api/certify
- POST /api/check-certificate
- GET  /api/runs
"""

import logging

from flask import Flask, abort, jsonify, request
from flask_migrate import Migrate
from sqlalchemy.exc import SQLAlchemyError

from catalog import make_builtin
from config import CatalogConfig, Config, get_config
from errors import FrattiniError
from frattini import (SYLOW_MODES, build_certificate, certificate_from_dict, certificate_to_dict, check_certificate,
                      converse_verdict)
from group_engine import build_group
from models import db, recent_runs
from perm_core import parse_cycles, parse_generators
from reports import verdict_to_dict
from subgroup_ops import generated_subgroup

logger = logging.getLogger(__name__)


def create_app(config_class=Config):
    """
    Application factory function.
    Creates a new Flask app instance with the specified configuration.
    """
    app = Flask(__name__)
    app.config.from_object(config_class)
    config_class.init_app(app)

    # Initialize extensions
    db.init_app(app)
    Migrate(app, db)

    # Register routes
    register_routes(app)

    # Create database tables
    with app.app_context():
        db.create_all()

    return app


def group_from_payload(value):
    """
    Resolve the ``group`` field of a request body.

    Args:
        value: a builtin name such as 'S4', or {"degree": n, "generators": [...]}

    Returns:
        Group: the requested group
    """
    if isinstance(value, str):
        return make_builtin(value)
    if isinstance(value, dict) and isinstance(value.get('degree'), int) and value['degree'] >= 1:
        degree = value['degree']
        return build_group(degree, [parse_cycles(text, degree) for text in value.get('generators', [])])
    abort(400, description="'group' must be a builtin name or an object with 'degree' and 'generators'")


def subgroup_from_payload(G, value):
    """Subgroup generators as a ';'-separated string or a list of cycle words."""
    if value is None:
        value = ''
    gens = parse_generators(value, G.degree) if isinstance(value, str) else [parse_cycles(t, G.degree) for t in value]
    return generated_subgroup(G, gens)


def _json_body():
    payload = request.get_json(silent=True)
    if not isinstance(payload, dict):
        abort(400, description='request body must be a JSON object')
    return payload


def register_routes(app):
    """Register all application routes."""

    @app.route('/')
    def index():
        """Service description."""
        return jsonify({
            'service': 'frattini',
            'endpoints': ['/api/catalog', '/api/verify', '/api/certify', '/api/check-certificate', '/api/runs'],
        })

    @app.route('/api/catalog')
    def api_catalog():
        """List the default sweep catalog."""
        groups = [make_builtin(name) for name in CatalogConfig.DEFAULT_CATALOG]
        return jsonify([{'name': g.name, 'order': g.order, 'degree': g.degree} for g in groups])

    @app.route('/api/verify', methods=['POST'])
    def api_verify():
        """Frattini condition, normality and their agreement for one (G, K)."""
        payload = _json_body()
        G = group_from_payload(payload.get('group'))
        K = subgroup_from_payload(G, payload.get('subgroup'))
        mode = payload.get('mode')
        if mode is not None and mode not in SYLOW_MODES:
            abort(400, description=f"'mode' must be one of: {', '.join(SYLOW_MODES)}")
        verdict = converse_verdict(G, K, mode=mode)
        return jsonify(verdict_to_dict(verdict))

    @app.route('/api/certify', methods=['POST'])
    def api_certify():
        """Build a normality certificate for one (x, g)."""
        payload = _json_body()
        G = group_from_payload(payload.get('group'))
        K = subgroup_from_payload(G, payload.get('subgroup'))
        x = parse_cycles(payload.get('x', '()'), G.degree)
        g = parse_cycles(payload.get('g', '()'), G.degree)
        return jsonify(certificate_to_dict(build_certificate(G, K, x, g)))

    @app.route('/api/check-certificate', methods=['POST'])
    def api_check_certificate():
        """Replay a certificate against (G, K)."""
        payload = _json_body()
        G = group_from_payload(payload.get('group'))
        K = subgroup_from_payload(G, payload.get('subgroup'))
        result = check_certificate(certificate_from_dict(payload.get('certificate') or {}), G, K)
        return jsonify({'accepted': result.ok, 'reason': result.reason, 'detail': result.detail})

    @app.route('/api/runs')
    def api_runs():
        """Recorded sweep runs, newest first."""
        limit = request.args.get('limit', 20, type=int)
        return jsonify([run.to_dict() for run in recent_runs(limit)])

    @app.errorhandler(FrattiniError)
    def frattini_error(error):
        """Input and precondition errors from the toolkit."""
        logger.info(f"Rejected request: {error}")
        return jsonify({'error': error.kind, 'message': str(error)}), 400

    @app.errorhandler(400)
    def bad_request(error):
        return jsonify({'error': 'bad-request', 'message': error.description}), 400

    @app.errorhandler(404)
    def not_found(error):
        """Custom 404 handler."""
        return jsonify({'error': 'not-found', 'message': error.description}), 404

    @app.errorhandler(SQLAlchemyError)
    def database_error(error):
        logger.error(f"Database error: {error}")
        db.session.rollback()
        return jsonify({'error': 'database', 'message': 'ledger unavailable'}), 500


if __name__ == '__main__':
    app = create_app(get_config())
    app.run(debug=True, host='0.0.0.0', port=5000)
