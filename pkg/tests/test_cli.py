from __future__ import annotations

import json
import os
import signal
import subprocess
import sys
import time

import pytest
import requests

from serverutil import free_port


def _wait_for_http(url: str, deadline: float = 15.0) -> None:
    stop = time.time() + deadline
    while time.time() < stop:
        try:
            requests.get(url, timeout=1)
            return
        except requests.RequestException:
            time.sleep(0.1)
    raise RuntimeError(f"server at {url} never came up")


@pytest.mark.parametrize("use_env", [False, True])
def test_serve_command_end_to_end(tmp_path, use_env):
    port = free_port()
    credentials = tmp_path / "credentials.json"
    credentials.write_text(json.dumps({"tok-alice": "alice"}))
    data_dir = tmp_path / "data"

    if use_env:
        args = [sys.executable, "-m", "ontoforge.service.cli", "serve"]
        env = {
            **os.environ,
            "ONTOFORGE_PORT": str(port),
            "ONTOFORGE_DATA_DIR": str(data_dir),
            "ONTOFORGE_CREDENTIALS": str(credentials),
        }
    else:
        args = [
            sys.executable, "-m", "ontoforge.service.cli", "serve",
            "--port", str(port), "--data-dir", str(data_dir),
            "--credentials", str(credentials),
        ]
        env = dict(os.environ)

    process = subprocess.Popen(
        args, env=env, stdout=subprocess.PIPE, stderr=subprocess.STDOUT,
    )
    try:
        base = f"http://127.0.0.1:{port}"
        _wait_for_http(f"{base}/api/projects")
        headers = {"Authorization": "Bearer tok-alice"}
        created = requests.post(
            f"{base}/api/projects", json={"name": "CLI"}, headers=headers, timeout=5,
        )
        assert created.status_code == 201
        project_id = created.json()["id"]
        assert (data_dir / f"{project_id}.log").exists()
        listed = requests.get(f"{base}/api/projects", headers=headers, timeout=5)
        assert [p["id"] for p in listed.json()] == [project_id]
    finally:
        process.send_signal(signal.SIGINT)
        try:
            process.wait(timeout=10)
        except subprocess.TimeoutExpired:
            process.kill()
