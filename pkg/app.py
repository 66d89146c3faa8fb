import json
import os

from flask import Flask, jsonify, make_response, request

import config
from graph_core import parse_graph
from rcop_toric import COMMANDS, RunConfig, error_result, execute
from utils import JsonUtils, LogUtils, RcopToricError

app = Flask(__name__)
app.config['MAX_CONTENT_LENGTH'] = 2 * 1024 * 1024  # graph documents are small

HTTP_STATUS = {0: 200, 1: 422, 2: 400, 3: 500}

CORS_HEADERS = "Content-Type,Authorization,X-Requested-With,Cache-Control,Pragma,Expires"
CORS_METHODS = "GET,POST,OPTIONS"

OPTION_FIELDS = {
    "seed": "seed",
    "degree": "degree_bound",
    "cap": "fiber_cap",
    "trials": "trials",
    "map": "map_kind",
    "part": "part",
    "all_pairs": "all_pairs",
}


def build_config(command, options):
    """RunConfig from the request options; unknown keys are rejected."""
    if not isinstance(options, dict):
        raise ValueError("'options' must be an object")
    unknown = sorted(set(options) - set(OPTION_FIELDS))
    if unknown:
        raise ValueError(f"unknown options {unknown}")
    values = {OPTION_FIELDS[key]: value for key, value in options.items()}
    for key in ("seed", "degree_bound", "fiber_cap", "trials"):
        if key in values and (isinstance(values[key], bool) or not isinstance(values[key], int)):
            raise ValueError(f"option '{key}' must be an integer")
    if "all_pairs" in values and not isinstance(values["all_pairs"], bool):
        raise ValueError("option 'all_pairs' must be a boolean")
    return RunConfig(command=command, **values)


@app.route('/ping')
def ping():
    """Simple ping endpoint to check if the service is alive."""
    return jsonify({'status': 'ok'})


@app.route('/health')
def health():
    return jsonify({
        'status': 'ok',
        'service': config.SERVICE_NAME,
        'version': config.SERVICE_VERSION,
        'threads': config.THREADS,
        'commands': list(COMMANDS),
    })


@app.route('/api/<command>', methods=['POST'])
def run_command(command):
    """Run one CLI command on the graph in the request body.

    Body: {"graph": <graph document>, "options": {...}}. The response carries
    the command payload and the CLI exit status, mapped onto an HTTP status.
    """
    if command not in COMMANDS:
        return jsonify({'status': 'error', 'message': f"Unknown command '{command}'"}), 404

    body = request.get_json(silent=True)
    if not isinstance(body, dict) or 'graph' not in body:
        return jsonify({'status': 'error', 'exit_status': 2, 'message': "Request body needs a 'graph' object"}), 400

    try:
        cfg = build_config(command, body.get('options', {}))
    except (ValueError, TypeError) as e:
        return jsonify({'status': 'error', 'exit_status': 2, 'message': str(e)}), 400

    try:
        graph = parse_graph(json.dumps(body['graph']))
        result = execute(graph, cfg)
    except RcopToricError as e:
        LogUtils.error(f"/api/{command}: {type(e).__name__}: {str(e)}")
        result = error_result(e)
    except Exception as e:
        LogUtils.error(f"/api/{command} failed unexpectedly: {str(e)}")
        return jsonify({'status': 'error', 'exit_status': 3, 'message': str(e)}), 500

    response = {
        'status': 'ok' if result.status == 0 else 'error',
        'command': command,
        'exit_status': result.status,
        'result': json.loads(json.dumps(result.payload, default=JsonUtils._default)),
    }
    return jsonify(response), HTTP_STATUS.get(result.status, 500)


@app.before_request
def handle_preflight():
    """Handle CORS preflight requests."""
    if request.method == "OPTIONS":
        response = make_response()
        response.headers["Access-Control-Allow-Origin"] = "*"
        response.headers['Access-Control-Allow-Headers'] = CORS_HEADERS
        response.headers['Access-Control-Allow-Methods'] = CORS_METHODS
        response.headers['Access-Control-Max-Age'] = '86400'
        return response


@app.after_request
def after_request(response):
    """Add CORS headers to every response."""
    # Remove any existing CORS headers to prevent duplicates
    response.headers.pop('Access-Control-Allow-Origin', None)
    response.headers.pop('Access-Control-Allow-Headers', None)
    response.headers.pop('Access-Control-Allow-Methods', None)

    response.headers['Access-Control-Allow-Origin'] = '*'
    response.headers['Access-Control-Allow-Headers'] = CORS_HEADERS
    response.headers['Access-Control-Allow-Methods'] = CORS_METHODS
    response.headers['X-Content-Type-Options'] = 'nosniff'
    return response


if __name__ == '__main__':
    port = int(os.environ.get('PORT', 8080))
    print(f"🚀 Starting {config.SERVICE_NAME} {config.SERVICE_VERSION} on port {port}")
    app.run(host='0.0.0.0', port=port)
