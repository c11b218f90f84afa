"""Replayable in-process archive server for harvest tests and demos.

Serves a fixed list of comment dicts through the same query interface
the real client uses (subreddit, author, before, size), newest first.
Failures can be injected to exercise retry, checkpoint and resume paths,
and every request is logged with a monotonic timestamp so rate-limit
behavior is observable.
"""

from __future__ import annotations

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse


class MockArchiveServer:
    def __init__(self, comments: list[dict], fail_first: int = 0, fail_when=None):
        self.comments = list(comments)
        self.fail_first = fail_first
        self.fail_when = fail_when  # callable(params: dict) -> bool
        self.request_log: list[tuple[float, dict]] = []
        self._lock = threading.Lock()
        server = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):  # silence default stderr chatter
                pass

            def do_GET(self):
                query = parse_qs(urlparse(self.path).query)
                params = {k: v[0] for k, v in query.items()}
                with server._lock:
                    server.request_log.append((time.monotonic(), params))
                    fail = server.fail_first > 0
                    if fail:
                        server.fail_first -= 1
                if not fail and server.fail_when is not None:
                    fail = server.fail_when(params)
                if fail:
                    self.send_response(500)
                    self.end_headers()
                    self.wfile.write(b'{"error": "injected failure"}')
                    return
                payload = json.dumps({"data": server._page(params)}).encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(payload)))
                self.end_headers()
                self.wfile.write(payload)

        self._httpd = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._httpd.serve_forever, daemon=True)
        self._thread.start()

    def _page(self, params: dict) -> list[dict]:
        items = self.comments
        if "subreddit" in params:
            items = [c for c in items if c["subreddit"].lower() == params["subreddit"].lower()]
        if "author" in params:
            items = [c for c in items if c["author"] == params["author"]]
        if "before" in params:
            before = int(params["before"])
            items = [c for c in items if c["created_utc"] < before]
        items = sorted(items, key=lambda c: -c["created_utc"])
        size = int(params.get("size", 500))
        return items[:size]

    @property
    def base_url(self) -> str:
        host, port = self._httpd.server_address
        return f"http://{host}:{port}/comments"

    def stop(self) -> None:
        self._httpd.shutdown()
        self._httpd.server_close()

    def __enter__(self) -> "MockArchiveServer":
        return self

    def __exit__(self, *exc) -> None:
        self.stop()


def make_comment(
    comment_id: str,
    author: str,
    subreddit: str,
    created_utc: int,
    body: str = "x" * 60,
    flair: str | None = None,
) -> dict:
    record = {
        "id": comment_id,
        "author": author,
        "subreddit": subreddit,
        "created_utc": created_utc,
        "body": body,
    }
    if flair is not None:
        record["author_flair_text"] = flair
    return record
