"""Real-socket transport: a DB host server and an APP-side channel."""

from __future__ import annotations

import socket
import socketserver
import threading

from ..codegen.bundle import Bundle
from ..interp.minidb import MiniDb
from . import wire as W
from .host import HostRuntime, SessionError
from .session import CostModel, DbEndpoint, SessionStats, _account


class _Handler(socketserver.StreamRequestHandler):
    def handle(self) -> None:
        srv: DbServer = self.server  # type: ignore[assignment]
        endpoint = srv.new_endpoint()
        names = next(iter(endpoint.runtimes.values())).class_names
        while True:
            try:
                data = W.read_frame(self.rfile)
            except W.WireError:
                return
            try:
                fr = W.decode(data, names)
                if fr.type == W.HELLO:
                    endpoint.bind(fr.session, fr.digest.hex())
                    reply = W.encode(W.Frame(W.HELLO_OK, fr.session, fr.seq + 1, fr.clock))
                elif fr.type == W.BYE:
                    endpoint.close(fr.session)
                    continue
                else:
                    with srv.lock:
                        reply = endpoint.handle(data)
            except Exception as e:  # report, then drop the connection
                msg = f"{type(e).__name__}: {e}"
                self.wfile.write(W.encode(W.Frame(W.ERROR, 0, 0, 0, text=msg)))
                self.wfile.flush()
                return
            self.wfile.write(reply)
            self.wfile.flush()


class DbServer(socketserver.ThreadingTCPServer):
    """DB host: serves sessions for any of its bundles against one database."""

    daemon_threads = True
    allow_reuse_address = True

    def __init__(self, address: tuple[str, int], bundles: list[Bundle], db: MiniDb):
        self.bundles = bundles
        self.db = db
        self.lock = threading.Lock()
        super().__init__(address, _Handler)

    def new_endpoint(self) -> DbEndpoint:
        # per-connection runtimes keep session state disjoint
        return DbEndpoint({b.hash: HostRuntime("DB", b, self.db) for b in self.bundles})


def serve(host: str, port: int, bundles: list[Bundle], db: MiniDb) -> DbServer:
    """Bind and return a server; call ``serve_forever`` (or use a thread) to run it."""
    try:
        return DbServer((host, port), bundles, db)
    except OSError as e:
        raise SessionError(f"cannot bind {host}:{port}: {e.strerror or e}") from None


class TcpChannel:
    """APP-side link to a :class:`DbServer`; costs are also accounted in virtual time."""

    def __init__(self, host: str, port: int, cost: CostModel | None = None, timeout: float = 30.0):
        self.cost = cost or CostModel()
        try:
            self.sock = socket.create_connection((host, port), timeout=timeout)
        except OSError as e:
            raise SessionError(f"cannot connect to {host}:{port}: {e.strerror or e}") from None
        self.rfile = self.sock.makefile("rb")

    def _roundtrip(self, data: bytes) -> bytes:
        self.sock.sendall(data)
        return W.read_frame(self.rfile)

    def open(self, session: int, digest: str) -> None:
        hello = W.Frame(W.HELLO, session, 0, 0, digest=bytes.fromhex(digest))
        reply = W.decode(self._roundtrip(W.encode(hello)), [])
        if reply.type == W.ERROR:
            raise SessionError(f"session refused: {reply.text}")
        if reply.type != W.HELLO_OK:
            raise W.WireError("expected HELLO_OK")

    def exchange(self, data: bytes, stats: SessionStats) -> bytes:
        _account(stats, data, self.cost)
        reply = self._roundtrip(data)
        if reply[9] == W.ERROR:
            fr = W.decode(reply, [])
            raise SessionError(f"peer error: {fr.text}")
        _account(stats, reply, self.cost)
        return reply

    def close(self, session: int) -> None:
        try:
            self.sock.sendall(W.encode(W.Frame(W.BYE, session, 0, 0)))
        except OSError:
            pass

    def shutdown(self) -> None:
        self.rfile.close()
        self.sock.close()
