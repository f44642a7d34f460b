"""Binary frames exchanged between the APP and DB runtimes (layout in docs/wire.md).

Every frame is ``u32 length`` followed by a body; all integers are
little-endian.  The body starts with a fixed header
``magic "DBSP" | u8 version | u8 type | u32 session | u32 seq | u64 clock``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

from ..values import decode_value, encode_value

MAGIC = b"DBSP"
VERSION = 1

HELLO, HELLO_OK, ERROR, TRANSFER, BYE = 1, 2, 3, 4, 5
TYPE_NAMES = {HELLO: "HELLO", HELLO_OK: "HELLO_OK", ERROR: "ERROR",
              TRANSFER: "TRANSFER", BYE: "BYE"}

# TRANSFER kinds
RESUME, FINISH, DBCALL, DBRESULT = 0, 1, 2, 3
KIND_NAMES = {RESUME: "RESUME", FINISH: "FINISH", DBCALL: "DBCALL", DBRESULT: "DBRESULT"}

# heap update kinds
PART_APP, PART_DB, NATIVE = 0, 1, 2

NO_BLOCK = 0xFFFFFFFF

_HDR = struct.Struct("<4sBBIIQ")
_U8 = struct.Struct("<B")
_U16 = struct.Struct("<H")
_U32 = struct.Struct("<I")
_I32 = struct.Struct("<i")
_U64 = struct.Struct("<Q")
_LEN = struct.Struct("<I")


class WireError(Exception):
    """Malformed frame, version mismatch or unexpected message."""


@dataclass
class PushedFrame:
    fid: int
    func: int  # function index
    ret: int  # block index or NO_BLOCK
    dst: int  # slot or -1
    slots: list[object]


@dataclass
class StackDelta:
    keep: int = 0  # bottom frames that survive unchanged in identity
    changed: list[tuple[int, int, object]] = field(default_factory=list)  # (frame, slot, value)
    pushed: list[PushedFrame] = field(default_factory=list)


@dataclass
class HeapUpdate:
    kind: int  # PART_APP | PART_DB | NATIVE
    oid: int
    # object parts: (field index, version, value); arrays: (version, value) per element
    entries: list[tuple]


@dataclass
class Transfer:
    kind: int
    target: int = NO_BLOCK
    stack: StackDelta = field(default_factory=StackDelta)
    heap: list[HeapUpdate] = field(default_factory=list)
    value: object = None  # FINISH result
    template: str = ""  # DBCALL
    args: list[object] = field(default_factory=list)
    rows: list[list[object]] | None = None  # DBRESULT (None for exec)


@dataclass
class Frame:
    type: int
    session: int
    seq: int
    clock: int
    transfer: Transfer | None = None
    text: str = ""  # ERROR message
    digest: bytes = b""  # HELLO artifact hash


# ------------------------------------------------------------------ encoding


def _str(s: str, out: bytearray) -> None:
    b = s.encode("utf-8")
    out += _U32.pack(len(b))
    out += b


def _encode_transfer(t: Transfer, out: bytearray) -> None:
    out += _U8.pack(t.kind)
    out += _U32.pack(t.target)
    sd = t.stack
    out += _U32.pack(sd.keep)
    out += _U32.pack(len(sd.changed))
    for fi, si, v in sd.changed:
        out += _U32.pack(fi)
        out += _U32.pack(si)
        encode_value(v, out)
    out += _U32.pack(len(sd.pushed))
    for pf in sd.pushed:
        out += _U64.pack(pf.fid)
        out += _U32.pack(pf.func)
        out += _U32.pack(pf.ret)
        out += _I32.pack(pf.dst)
        out += _U32.pack(len(pf.slots))
        for v in pf.slots:
            encode_value(v, out)
    out += _U32.pack(len(t.heap))
    for hu in t.heap:
        out += _U8.pack(hu.kind)
        out += _U64.pack(hu.oid)
        out += _U32.pack(len(hu.entries))
        if hu.kind == NATIVE:
            for ver, v in hu.entries:
                out += _U64.pack(ver)
                encode_value(v, out)
        else:
            for fi, ver, v in hu.entries:
                out += _U16.pack(fi)
                out += _U64.pack(ver)
                encode_value(v, out)
    if t.kind == FINISH:
        encode_value(t.value, out)
    elif t.kind == DBCALL:
        _str(t.template, out)
        out += _U32.pack(len(t.args))
        for v in t.args:
            encode_value(v, out)
    elif t.kind == DBRESULT:
        if t.rows is None:
            out += _U8.pack(0)
        else:
            out += _U8.pack(1)
            out += _U32.pack(len(t.rows))
            for row in t.rows:
                out += _U32.pack(len(row))
                for v in row:
                    encode_value(v, out)


def encode(fr: Frame) -> bytes:
    body = bytearray(_HDR.pack(MAGIC, VERSION, fr.type, fr.session, fr.seq, fr.clock))
    if fr.type == TRANSFER:
        _encode_transfer(fr.transfer, body)
    elif fr.type == HELLO:
        body += fr.digest
    elif fr.type == ERROR:
        _str(fr.text, body)
    return _LEN.pack(len(body)) + bytes(body)


# ------------------------------------------------------------------ decoding


class _Reader:
    def __init__(self, buf: bytes, pos: int, class_names: list[str]):
        self.buf = buf
        self.pos = pos
        self.names = class_names

    def take(self, st: struct.Struct) -> int:
        v = st.unpack_from(self.buf, self.pos)[0]
        self.pos += st.size
        return v

    def value(self) -> object:
        v, self.pos = decode_value(self.buf, self.pos, self.names)
        return v

    def string(self) -> str:
        n = self.take(_U32)
        s = self.buf[self.pos:self.pos + n].decode("utf-8")
        self.pos += n
        return s


def _decode_transfer(r: _Reader) -> Transfer:
    t = Transfer(r.take(_U8), r.take(_U32))
    if t.kind not in KIND_NAMES:
        raise WireError(f"unknown transfer kind {t.kind}")
    sd = t.stack
    sd.keep = r.take(_U32)
    for _ in range(r.take(_U32)):
        fi, si = r.take(_U32), r.take(_U32)
        sd.changed.append((fi, si, r.value()))
    for _ in range(r.take(_U32)):
        fid, func, ret, dst = r.take(_U64), r.take(_U32), r.take(_U32), r.take(_I32)
        n = r.take(_U32)
        sd.pushed.append(PushedFrame(fid, func, ret, dst, [r.value() for _ in range(n)]))
    for _ in range(r.take(_U32)):
        kind, oid, n = r.take(_U8), r.take(_U64), r.take(_U32)
        if kind == NATIVE:
            entries = [(r.take(_U64), r.value()) for _ in range(n)]
        elif kind in (PART_APP, PART_DB):
            entries = []
            for _ in range(n):
                fi, ver = r.take(_U16), r.take(_U64)
                entries.append((fi, ver, r.value()))
        else:
            raise WireError(f"unknown heap update kind {kind}")
        t.heap.append(HeapUpdate(kind, oid, entries))
    if t.kind == FINISH:
        t.value = r.value()
    elif t.kind == DBCALL:
        t.template = r.string()
        t.args = [r.value() for _ in range(r.take(_U32))]
    elif t.kind == DBRESULT:
        if r.take(_U8):
            t.rows = []
            for _ in range(r.take(_U32)):
                t.rows.append([r.value() for _ in range(r.take(_U32))])
    return t


def decode(data: bytes, class_names: list[str]) -> Frame:
    """Decode one frame including its length prefix."""
    try:
        (n,) = _LEN.unpack_from(data, 0)
        if n != len(data) - 4:
            raise WireError(f"frame length {n} does not match {len(data) - 4} bytes")
        magic, ver, typ, session, seq, clock = _HDR.unpack_from(data, 4)
        if magic != MAGIC:
            raise WireError("bad magic")
        if ver != VERSION:
            raise WireError(f"wire version {ver} is not supported (expected {VERSION})")
        fr = Frame(typ, session, seq, clock)
        r = _Reader(data, 4 + _HDR.size, class_names)
        if typ == TRANSFER:
            fr.transfer = _decode_transfer(r)
        elif typ == HELLO:
            fr.digest = data[r.pos:r.pos + 32]
            r.pos += 32
        elif typ == ERROR:
            fr.text = r.string()
        elif typ not in TYPE_NAMES:
            raise WireError(f"unknown frame type {typ}")
        if r.pos != len(data):
            raise WireError(f"{len(data) - r.pos} trailing bytes in frame")
        return fr
    except (struct.error, IndexError, UnicodeDecodeError) as e:
        raise WireError(f"truncated or malformed frame: {e}") from None
    except Exception as e:
        if isinstance(e, WireError):
            raise
        raise WireError(f"malformed frame: {e}") from None


def read_frame(sock_file) -> bytes:
    """Read one length-prefixed frame from a binary file-like object."""
    head = sock_file.read(4)
    if len(head) < 4:
        raise WireError("peer closed the connection")
    (n,) = _LEN.unpack(head)
    body = sock_file.read(n)
    if len(body) < n:
        raise WireError("peer closed the connection mid-frame")
    return head + body
