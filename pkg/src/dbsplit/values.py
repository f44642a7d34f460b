"""Runtime values shared by the reference interpreter and the distributed runtime.

Scalars are plain Python values (``int`` wrapped to 64 bits, ``float``,
``bool``, ``str``, ``None``).  Heap objects and arrays are referenced through
:class:`Ref`; what a ref points to lives in whichever heap the executor keeps.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

INT_MIN = -(1 << 63)
INT_MAX = (1 << 63) - 1


class EvalError(Exception):
    """Dynamic type error, bad index, division by zero and similar."""


@dataclass(frozen=True)
class Ref:
    """Reference to an object (``cls`` = class name) or array (``cls`` is None)."""

    oid: int
    cls: str | None = None

    @property
    def is_array(self) -> bool:
        return self.cls is None


def wrap(v: int) -> int:
    return ((v - INT_MIN) & 0xFFFFFFFFFFFFFFFF) + INT_MIN


def _is_num(v: object) -> bool:
    return type(v) in (int, float)


def default_for(kind: str) -> object:
    """Initial value of a field or array element declared with ``kind``."""
    if kind == "int":
        return 0
    if kind == "float":
        return 0.0
    if kind == "bool":
        return False
    return None


def _tdiv(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a < 0) == (b < 0) else -q


def _fdiv(a: float, b: float) -> float:
    if b == 0.0:
        if a == 0.0 or math.isnan(a):
            return math.nan
        neg = (a < 0) != (math.copysign(1.0, b) < 0)
        return -math.inf if neg else math.inf
    return a / b


def binop(op: str, a: object, b: object) -> object:
    ta, tb = type(a), type(b)
    if op in ("==", "!="):
        if _is_num(a) and _is_num(b):
            eq = a == b
        else:
            eq = ta is tb and a == b
        return eq if op == "==" else not eq
    if op in ("&&", "||"):
        if ta is not bool or tb is not bool:
            raise EvalError(f"operator {op} needs bool operands")
        return (a and b) if op == "&&" else (a or b)
    if op == "+" and ta is str and tb is str:
        return a + b
    if not (_is_num(a) and _is_num(b)):
        raise EvalError(f"operator {op} not defined for {_tname(a)} and {_tname(b)}")
    if op in ("<", "<=", ">", ">="):
        if op == "<":
            return a < b
        if op == "<=":
            return a <= b
        if op == ">":
            return a > b
        return a >= b
    if ta is int and tb is int:
        if op == "+":
            return wrap(a + b)
        if op == "-":
            return wrap(a - b)
        if op == "*":
            return wrap(a * b)
        if b == 0:
            raise EvalError("integer division by zero")
        q = _tdiv(a, b)
        if op == "/":
            return wrap(q)
        if op == "%":
            return wrap(a - q * b)
    else:
        a, b = float(a), float(b)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            return _fdiv(a, b)
        if op == "%":
            if b == 0.0:
                return math.nan
            return math.fmod(a, b)
    raise EvalError(f"unknown operator {op}")


def unop(op: str, a: object) -> object:
    if op == "!":
        if type(a) is not bool:
            raise EvalError("operator ! needs a bool operand")
        return not a
    if op == "-":
        if type(a) is int:
            return wrap(-a)
        if type(a) is float:
            return -a
        raise EvalError(f"operator - not defined for {_tname(a)}")
    raise EvalError(f"unknown operator {op}")


def truthy(v: object) -> bool:
    if type(v) is not bool:
        raise EvalError(f"condition must be bool, got {_tname(v)}")
    return v


def _tname(v: object) -> str:
    if v is None:
        return "null"
    if isinstance(v, Ref):
        return "array" if v.is_array else v.cls
    return {bool: "bool", int: "int", float: "float", str: "string"}[type(v)]


def render(v: object) -> str:
    """Text form used by ``print`` and in output traces."""
    if v is None:
        return "null"
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, Ref):
        return "<array>" if v.is_array else f"<{v.cls}>"
    if isinstance(v, float):
        return repr(v)
    return str(v)


# ------------------------------------------------------------- wire encoding
#
# Every value on the wire is a one-byte tag followed by its payload.  The
# payload length is what profiling reports as size(def).

TAG_NULL, TAG_INT, TAG_FLOAT, TAG_BOOL, TAG_STR, TAG_OBJ, TAG_ARR = range(7)

_I64 = struct.Struct("<q")
_F64 = struct.Struct("<d")
_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")
REF_SIZE = 8
CLASS_MASK = 0xFFFF
ARRAY_CLASS = 0xFFFF


def scalar_size(v: object) -> int:
    """Payload bytes of a value, excluding its tag; refs count 8 bytes."""
    t = type(v)
    if v is None:
        return 0
    if t is bool:
        return 1
    if t is int or t is float:
        return 8
    if t is str:
        return 4 + len(v.encode("utf-8"))
    return REF_SIZE


def make_oid(seq: int, host_bit: int, class_idx: int) -> int:
    """Heap ids carry the allocating host and the class index in their low bits."""
    return ((seq << 1 | host_bit) << 16) | class_idx


def oid_host_bit(oid: int) -> int:
    return (oid >> 16) & 1


def encode_value(v: object, out: bytearray) -> None:
    t = type(v)
    if v is None:
        out.append(TAG_NULL)
    elif t is bool:
        out.append(TAG_BOOL)
        out.append(1 if v else 0)
    elif t is int:
        out.append(TAG_INT)
        out += _I64.pack(v)
    elif t is float:
        out.append(TAG_FLOAT)
        out += _F64.pack(v)
    elif t is str:
        b = v.encode("utf-8")
        out.append(TAG_STR)
        out += _U32.pack(len(b))
        out += b
    elif t is Ref:
        if v.is_array:
            out.append(TAG_ARR)
            out += _U64.pack(v.oid)
        else:
            out.append(TAG_OBJ)
            out += _U64.pack(v.oid)
    else:
        raise EvalError(f"cannot serialize {v!r}")


def decode_value(buf: bytes, pos: int, class_names: list[str]) -> tuple[object, int]:
    tag = buf[pos]
    pos += 1
    if tag == TAG_NULL:
        return None, pos
    if tag == TAG_BOOL:
        return buf[pos] != 0, pos + 1
    if tag == TAG_INT:
        return _I64.unpack_from(buf, pos)[0], pos + 8
    if tag == TAG_FLOAT:
        return _F64.unpack_from(buf, pos)[0], pos + 8
    if tag == TAG_STR:
        n = _U32.unpack_from(buf, pos)[0]
        pos += 4
        return buf[pos:pos + n].decode("utf-8"), pos + n
    if tag == TAG_ARR:
        return Ref(_U64.unpack_from(buf, pos)[0], None), pos + 8
    if tag == TAG_OBJ:
        oid = _U64.unpack_from(buf, pos)[0]
        return Ref(oid, class_names[oid & CLASS_MASK]), pos + 8
    raise EvalError(f"bad value tag {tag}")
