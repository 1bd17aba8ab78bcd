import logging
import os

from flask import Flask, jsonify, request
from flask_cors import CORS

from engine import SelectionProcessor
from engine.config import configure_logging, default_jobs

# Configure logging
configure_logging()
logger = logging.getLogger(__name__)

app = Flask(__name__)

# Enable CORS for all routes (local notebooks and dashboards call the API)
CORS(app)

# Initialize the selection processor
processor = SelectionProcessor(n_jobs=default_jobs())


@app.route("/api", methods=["GET"])
def api_info():
    """API information endpoint"""
    return jsonify(
        {
            "status": "ok",
            "message": "Probeboost Variable Selection API",
            "version": "1.0",
            "methods": ["fit", "probing", "cv", "cv_augmented", "stabsel:<two of q, pi_thr, pfer>"],
            "endpoints": {"select": "/select [POST]", "health": "/health [GET]"},
        }
    ), 200


@app.route("/health", methods=["GET"])
def health():
    """Health check for monitoring"""
    return jsonify({"status": "healthy"}), 200


@app.route("/select", methods=["POST"])
def select():
    """
    Run one selection method on the posted data
    """
    try:
        input_data = request.get_json(force=True, silent=True)

        if not input_data or "data" not in input_data:
            return jsonify({"error": "No input data provided", "status": "failed"}), 400

        method = input_data.get("method", "probing")
        logger.info(f"Selection request: {method}")

        result = processor.process_from_dict(input_data)

        logger.info(f"Selection finished: {method}, {result['n_selected']} selected")

        return jsonify(result), 200

    except (ValueError, KeyError, TypeError) as e:
        # Validation errors from engine and malformed payloads
        logger.error(f"Validation error: {str(e)}")
        return jsonify({"error": str(e), "status": "validation_failed"}), 400

    except Exception:
        # Unexpected errors
        logger.exception("Selection failed")
        return jsonify({"error": "internal error", "status": "failed"}), 500


if __name__ == "__main__":
    port = int(os.environ.get("PORT", 8080))
    app.run(host="0.0.0.0", port=port, debug=False)
