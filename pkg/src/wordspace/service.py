"""HTTP access to the distance and analogy tools.

Three GET endpoints over one immutable in-memory model:

  /distance?word=W&top=K   -> {"query": W, "results": [{"word", "similarity"}]}
  /analogy?a=A&b=B&c=C&top=K
  /health                  -> {"status", "vocab_size", "dim"} (503 while loading)

Responses reuse the CLI's ranking engine, so result words and 6-decimal
similarities match the command-line tools byte for byte.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, urlsplit

from .errors import WordNotFoundError, WordspaceError
from .model import EmbeddingModel
from .modelio import load_model
from .query import DEFAULT_TOP_K, analogy_query, distance_query

logger = logging.getLogger(__name__)


@dataclass
class ServiceConfig:
    model_path: str
    host: str = "127.0.0.1"
    port: int = 8080
    default_k: int = DEFAULT_TOP_K
    timeout: float = 30.0


class QueryService:
    """Holds the model and serves it over HTTP; model is read-only once set."""

    def __init__(self, config: ServiceConfig, model: Optional[EmbeddingModel] = None):
        self.config = config
        self.model = model
        self._server: Optional[ThreadingHTTPServer] = None

    def load(self) -> None:
        logger.info("loading model from %s", self.config.model_path)
        self.model = load_model(self.config.model_path)
        logger.info("model ready: %d words, dim %d", len(self.model.vocab), self.model.dim)

    def make_server(self) -> ThreadingHTTPServer:
        service = self

        class Handler(_QueryHandler):
            pass

        Handler.service = service
        Handler.timeout = self.config.timeout
        self._server = ThreadingHTTPServer((self.config.host, self.config.port), Handler)
        return self._server

    def serve_forever(self) -> None:
        server = self.make_server()
        logger.info("serving on %s:%d", *server.server_address[:2])
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            logger.info("shutting down")
        finally:
            server.server_close()


class _QueryHandler(BaseHTTPRequestHandler):
    service: QueryService = None
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # route handler chatter to our logger
        logger.debug("%s " + fmt, self.address_string(), *args)

    def do_GET(self):
        url = urlsplit(self.path)
        params = {k: v[0] for k, v in parse_qs(url.query).items()}
        try:
            if url.path == "/health":
                self._health()
            elif url.path == "/distance":
                self._distance(params)
            elif url.path == "/analogy":
                self._analogy(params)
            else:
                self._send(404, {"error": f"unknown path {url.path}"})
        except BrokenPipeError:
            pass
        except Exception as exc:  # defensive: never kill the worker thread
            logger.exception("request failed")
            self._send(500, {"error": str(exc)})

    def _model(self) -> Optional[EmbeddingModel]:
        return self.service.model

    def _health(self):
        model = self._model()
        if model is None:
            self._send(503, {"error": "model not loaded"})
            return
        self._send(200, {"status": "ok", "vocab_size": len(model.vocab), "dim": model.dim})

    def _top(self, params) -> int:
        raw = params.get("top")
        if raw is None:
            return self.service.config.default_k
        try:
            k = int(raw)
        except ValueError:
            raise _BadRequest(f"top must be an integer, got {raw!r}")
        if k < 0:
            raise _BadRequest("top must be >= 0")
        return k

    def _distance(self, params):
        model = self._model()
        if model is None:
            self._send(503, {"error": "model not loaded"})
            return
        word = params.get("word")
        if word is None:
            self._send(400, {"error": "missing parameter: word"})
            return
        try:
            result = distance_query(model, word, self._top(params))
        except _BadRequest as exc:
            self._send(400, {"error": str(exc)})
            return
        except WordNotFoundError as exc:
            self._send(404, {"error": str(exc), "word": word})
            return
        except WordspaceError as exc:
            self._send(400, {"error": str(exc)})
            return
        self._send(200, {"query": word, "results": _result_doc(result)})

    def _analogy(self, params):
        model = self._model()
        if model is None:
            self._send(503, {"error": "model not loaded"})
            return
        missing = [p for p in ("a", "b", "c") if p not in params]
        if missing:
            self._send(400, {"error": "missing parameter(s): " + ", ".join(missing)})
            return
        a, b, c = params["a"], params["b"], params["c"]
        try:
            result = analogy_query(model, a, b, c, self._top(params))
        except _BadRequest as exc:
            self._send(400, {"error": str(exc)})
            return
        except WordNotFoundError as exc:
            self._send(404, {"error": str(exc), "words": exc.words})
            return
        except WordspaceError as exc:
            self._send(400, {"error": str(exc)})
            return
        self._send(200, {"query": {"a": a, "b": b, "c": c}, "results": _result_doc(result)})

    def _send(self, status: int, doc: dict):
        body = json.dumps(doc).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


class _BadRequest(Exception):
    pass


def _result_doc(result) -> list[dict]:
    # similarity carries exactly the 6 decimals the CLI prints
    return [{"word": w, "similarity": float(f"{s:.6f}")} for w, s in result]
