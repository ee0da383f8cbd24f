"""Classical gates used inside wiring stages."""

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from core.errors import CodecError, SignatureError

BOX_PREFIX = "box."


class GateOp(str, Enum):
    """Gate vocabulary."""

    CONST = "const"
    COPY = "copy"
    NOT = "not"
    XOR = "xor"
    AND = "and"
    OR = "or"
    MUX = "mux"
    LUT = "lut"
    CSWAP = "cswap"


def is_variable_name(name: str) -> bool:
    """Plain identifiers or box.<identifier>."""
    if name.startswith(BOX_PREFIX):
        return name[len(BOX_PREFIX):].isidentifier()
    return name.isidentifier()


@dataclass(frozen=True)
class Gate:
    """One assignment `targets = op args` evaluated on a variable environment.

    `mux c v0 v1 ...` selects the argument indexed by the value of c, so the
    selector may have arity above 2. `lut` reads its arguments as binary digits,
    most significant first, and indexes `table`.
    """

    targets: tuple[str, ...]
    op: GateOp
    args: tuple[str, ...] = ()
    value: int = 0
    table: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(self, "table", tuple(self.table))
        for name in self.targets + self.args:
            if not is_variable_name(name):
                raise SignatureError("invalid variable name in gate", name=name)
        expected_targets = 2 if self.op is GateOp.CSWAP else 1
        if len(self.targets) != expected_targets:
            raise SignatureError(f"{self.op.value} assigns {expected_targets} target(s)", targets=self.targets)
        arity = {
            GateOp.CONST: (0, 0),
            GateOp.COPY: (1, 1),
            GateOp.NOT: (1, 1),
            GateOp.XOR: (1, None),
            GateOp.AND: (1, None),
            GateOp.OR: (1, None),
            GateOp.MUX: (3, None),
            GateOp.LUT: (1, None),
            GateOp.CSWAP: (3, 3),
        }[self.op]
        low, high = arity
        if len(self.args) < low or (high is not None and len(self.args) > high):
            raise SignatureError(f"wrong number of arguments for {self.op.value}", args=self.args)
        if self.op is GateOp.LUT:
            if len(self.table) != 2 ** len(self.args) or any(v < 0 for v in self.table):
                raise SignatureError("lut table must have 2**len(args) nonnegative entries", table=self.table)
        if self.value < 0:
            raise SignatureError("const value must be nonnegative", value=self.value)

    def reads(self) -> tuple[str, ...]:
        """Variables read by the gate."""
        return self.args

    def evaluate(self, env: Mapping[str, int]) -> dict[str, int]:
        """Values of the targets given the current environment."""
        v = [env[name] for name in self.args]
        if self.op is GateOp.CONST:
            result: tuple[int, ...] = (self.value,)
        elif self.op is GateOp.COPY:
            result = (v[0],)
        elif self.op is GateOp.NOT:
            result = (v[0] ^ 1,)
        elif self.op is GateOp.XOR:
            acc = 0
            for bit in v:
                acc ^= bit
            result = (acc,)
        elif self.op is GateOp.AND:
            result = (int(all(v)),)
        elif self.op is GateOp.OR:
            result = (int(any(v)),)
        elif self.op is GateOp.MUX:
            if v[0] >= len(v) - 1:
                raise SignatureError("mux selector out of range", selector=self.args[0], value=v[0])
            result = (v[1 + v[0]],)
        elif self.op is GateOp.LUT:
            index = 0
            for bit in v:
                if bit not in (0, 1):
                    raise SignatureError("lut arguments must be bits", args=self.args)
                index = 2 * index + bit
            result = (self.table[index],)
        else:
            c, u, w = v
            result = (w, u) if c else (u, w)
        return dict(zip(self.targets, result))

    def __str__(self) -> str:
        return format_gate(self)


def format_gate(gate: Gate) -> str:
    """Render a gate in the wiring text syntax."""
    left = ", ".join(gate.targets)
    if gate.op is GateOp.CONST:
        right = f"const {gate.value}"
    elif gate.op is GateOp.LUT:
        right = f"lut {''.join(map(str, gate.table))} {' '.join(gate.args)}"
    else:
        right = f"{gate.op.value} {' '.join(gate.args)}"
    return f"{left} = {right}"


def parse_gate(text: str, line: int | None = None) -> Gate:
    """Parse `targets = op args`."""
    left, sep, right = text.partition("=")
    if not sep:
        raise CodecError("expected 'target = op args'", line=line)
    targets = tuple(t.strip() for t in left.split(","))
    tokens = right.split()
    if not tokens:
        raise CodecError("missing gate operation", line=line)
    try:
        op = GateOp(tokens[0])
    except ValueError as exc:
        raise CodecError(f"unknown gate {tokens[0]!r}", line=line) from exc
    try:
        if op is GateOp.CONST:
            if len(tokens) != 2:
                raise CodecError("const takes one value", line=line)
            return Gate(targets, op, value=int(tokens[1]))
        if op is GateOp.LUT:
            if len(tokens) < 3:
                raise CodecError("lut takes a table and arguments", line=line)
            return Gate(targets, op, tuple(tokens[2:]), table=tuple(int(ch) for ch in tokens[1]))
        return Gate(targets, op, tuple(tokens[1:]))
    except (SignatureError, ValueError) as exc:
        raise CodecError(str(exc), line=line) from exc


def const(target: str, value: int) -> Gate:
    return Gate((target,), GateOp.CONST, value=value)


def copy(target: str, source: str) -> Gate:
    return Gate((target,), GateOp.COPY, (source,))


def xor(target: str, *sources: str) -> Gate:
    return Gate((target,), GateOp.XOR, sources)


def and_(target: str, *sources: str) -> Gate:
    return Gate((target,), GateOp.AND, sources)


def mux(target: str, selector: str, *options: str) -> Gate:
    return Gate((target,), GateOp.MUX, (selector, *options))


def lut(target: str, table: tuple[int, ...], *sources: str) -> Gate:
    return Gate((target,), GateOp.LUT, sources, table=table)


def cswap(targets: tuple[str, str], control: str, first: str, second: str) -> Gate:
    return Gate(targets, GateOp.CSWAP, (control, first, second))
