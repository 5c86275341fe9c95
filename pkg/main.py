import logging
import os

from flask import Flask, request, jsonify
from agency_swarm.tools import ToolFactory
from pydantic import ValidationError

from dsi_hurst.config import configure_logging, get_settings

settings = get_settings()
configure_logging(settings.log_level)
logger = logging.getLogger("dsi_hurst.service")

app = Flask(__name__)

TOOLS_FOLDER = os.path.join(os.path.dirname(os.path.abspath(__file__)), "tools")


def authorized():
    header = request.headers.get("Authorization", "")
    if not header.startswith("Bearer "):
        return False
    return settings.api_token is not None and header[len("Bearer "):] == settings.api_token


def create_endpoint(route, tool_class):
    @app.route(route, methods=['POST'], endpoint=tool_class.__name__)
    def endpoint():
        logger.debug("endpoint %s called", route)
        if not authorized():
            return jsonify({"message": "Unauthorized"}), 401

        try:
            tool = tool_class(**(request.get_json(silent=True) or {}))
        except ValidationError as e:
            return jsonify({"Error": str(e)}), 400
        try:
            return jsonify({"response": tool.run()})
        except Exception as e:
            logger.exception("%s failed", tool_class.__name__)
            return jsonify({"Error": str(e)}), 500


def parse_all_tools(tools_folder=TOOLS_FOLDER):
    tools_dict = {}
    for root, dirs, files in os.walk(tools_folder):
        relative_path = os.path.relpath(root, tools_folder)
        folder = relative_path if relative_path != '.' else 'root'
        for filename in sorted(files):
            if filename.endswith('.py'):
                tool_path = os.path.join(root, filename)
                tool_class = ToolFactory.from_file(tool_path)
                tools_dict.setdefault(folder, []).append(tool_class)
    return tools_dict


# create endpoints for each file in ./tools
tools = parse_all_tools()
tools = [tool for tool_list in tools.values() for tool in tool_list]
logger.info("tools found: %s", [tool.__name__ for tool in tools])

for tool in tools:
    route = f"/{tool.__name__}"
    logger.info("creating endpoint for %s", route)
    create_endpoint(route, tool)


@app.route("/", methods=['POST'])
def tools_handler():
    if not authorized():
        return jsonify({"message": "Unauthorized"}), 401

    with app.request_context(request.environ):
        return app.full_dispatch_request()


if __name__ == '__main__':
    app.run(debug=True, port=settings.port)
