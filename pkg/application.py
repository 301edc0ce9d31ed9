"""
Flask app: read-only viewer for Sasaki catalog verification reports.
Host on PythonAnywhere: set WSGI to application.application
When behind a reverse proxy (e.g. nginx at /sasaki), set X-Forwarded-Prefix
so url_for() links use the correct subpath.

Reports are read from the report cache file (see sasaki_catalog.load_settings)
and kept in memory until the file changes. POST /api/verify runs the
verification on demand.
"""

from flask import Flask, abort, jsonify, request, url_for
from werkzeug.middleware.proxy_fix import ProxyFix

from sasaki_catalog import catalog, load_settings, select, verify_all
from sasaki_data import load_reports, reports_to_dict, write_reports
from sasaki_errors import SasakiError

app = Flask(__name__)
# Respect X-Forwarded-Prefix so links work when mounted at e.g. /sasaki/
app.wsgi_app = ProxyFix(app.wsgi_app, x_prefix=1)


def _cached_reports() -> dict:
    data = load_reports(load_settings().report_cache)
    if data is None:
        abort(404, description="No report file yet; run `sasaki_cli.py catalog verify --output ...`")
    return data


@app.errorhandler(404)
def not_found(e):
    return jsonify({"ok": False, "error": e.description}), 404


@app.route("/")
def index():
    return jsonify({
        "entries": len(catalog()),
        "links": {
            "catalog": url_for("api_catalog"),
            "reports": url_for("api_reports"),
            "verify": url_for("api_verify"),
        },
    })


@app.route("/api/catalog")
def api_catalog():
    pattern = request.args.get("filter", "*")
    return jsonify({"entries": [e.to_dict() for e in select(pattern)]})


@app.route("/api/reports")
def api_reports():
    return jsonify(_cached_reports())


@app.route("/api/reports/<entry_id>")
def api_reports_entry(entry_id: str):
    data = _cached_reports()
    reports = [r for r in data.get("reports", []) if r.get("entry") == entry_id]
    if not reports:
        abort(404, description=f"No reports for {entry_id!r}")
    return jsonify({
        "schema": data["schema"],
        "passed": all(r.get("passed") for r in reports),
        "reports": reports,
    })


@app.route("/api/verify", methods=["POST"])
def api_verify():
    payload = request.get_json(silent=True) or {}
    pattern = payload.get("filter", "*")
    lam = payload.get("lambda")
    if not isinstance(pattern, str):
        return jsonify({"ok": False, "error": "filter must be a string"}), 400
    if lam is not None and not isinstance(lam, (str, list)):
        return jsonify({"ok": False, "error": "lambda must be a string or a list"}), 400
    if not select(pattern):
        return jsonify({"ok": False, "error": f"No catalog entries match {pattern!r}"}), 400
    settings = load_settings()
    try:
        reports = verify_all(pattern, lambda_samples=lam, settings=settings)
    except (SasakiError, ValueError, ZeroDivisionError) as e:
        return jsonify({"ok": False, "error": str(e)}), 400
    if payload.get("save"):
        write_reports(settings.report_cache, reports)
    return jsonify({"ok": True, **reports_to_dict(reports)})


application = app  # PythonAnywhere looks for "application"

if __name__ == "__main__":
    import os
    port = int(os.environ.get("PORT", 5002))
    app.run(host="127.0.0.1", port=port)
