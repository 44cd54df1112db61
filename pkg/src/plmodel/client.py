"""HTTP client plumbing for the thin-client CLI.

By default requests never leave the process: a small sync transport drives
the ASGI app directly, so the CLI needs no running server and no socket.
Passing a base URL switches to a real network client against a served
instance; request and response bodies are identical either way.
"""

from __future__ import annotations

import asyncio
from typing import Optional

import httpx

_LOCAL_BASE_URL = "http://plmodel.local"


class InProcessTransport(httpx.BaseTransport):
    """Sync httpx transport that runs requests through an ASGI app."""

    def __init__(self, app) -> None:
        self._asgi = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        async def _run() -> tuple[int, httpx.Headers, bytes]:
            response = await self._asgi.handle_async_request(request)
            body = await response.aread()
            await response.aclose()
            return response.status_code, response.headers, body

        status, headers, body = asyncio.run(_run())
        return httpx.Response(status, headers=headers, content=body, request=request)


def open_client(server: Optional[str] = None) -> httpx.Client:
    """In-process client by default; HTTP client when a server URL is given."""
    if server:
        return httpx.Client(base_url=server.rstrip("/"), timeout=30.0)
    from .service.app import app  # deferred: only the local path needs the app

    return httpx.Client(base_url=_LOCAL_BASE_URL, transport=InProcessTransport(app))
