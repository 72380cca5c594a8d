"""Server command line."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import click


@click.group()
def main():
    """Collaborative ontology editing service."""


@main.command()
@click.option("--port", "-p", type=int, default=8646, envvar="ONTOFORGE_PORT",
              show_default=True, help="TCP port to listen on.")
@click.option("--host", default="127.0.0.1", envvar="ONTOFORGE_HOST",
              show_default=True, help="Bind address.")
@click.option("--data-dir", type=click.Path(file_okay=False, path_type=Path),
              default="./ontoforge-data", envvar="ONTOFORGE_DATA_DIR",
              show_default=True, help="Directory for project logs and snapshots.")
@click.option("--credentials", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              required=True, envvar="ONTOFORGE_CREDENTIALS",
              help="JSON file mapping bearer tokens to user ids.")
def serve(port: int, host: str, data_dir: Path, credentials: Path):
    """Run the HTTP API server."""
    import uvicorn

    from .api import create_app
    from .project import ProjectService

    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s %(name)s %(message)s")
    tokens = json.loads(credentials.read_text("utf-8"))
    if not isinstance(tokens, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in tokens.items()
    ):
        raise click.ClickException("credentials file must map token strings to user ids")
    service = ProjectService(data_dir)
    app = create_app(service, tokens)
    click.echo(f"serving {len(service.projects)} project(s) on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
