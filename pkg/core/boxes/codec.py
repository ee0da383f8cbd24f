"""Canonical text format for boxes.

    box v1
    alice inputs: x0 x1
    alice outputs: a
    bob inputs: y y_prime
    bob outputs: b
    table:
    0 0 0 0 -> 0 0 1/2 | 1 1 1/2

Input values follow the signature order (Alice then Bob); each entry lists
output values (Alice then Bob) and a "num/den" probability. Zero entries are
omitted. Variables with arity other than 2 are written name:arity.
"""

from fractions import Fraction
from pathlib import Path

from core.errors import CodecError, RacboxError
from core.rational import format_fraction

from .models import BipartiteBox, VariableSpec, assignments

HEADER = "box v1"
ROLES = ("alice inputs", "alice outputs", "bob inputs", "bob outputs")


def _format_spec(spec: VariableSpec) -> str:
    return spec.name if spec.arity == 2 else f"{spec.name}:{spec.arity}"


def _parse_spec(token: str, line: int) -> VariableSpec:
    name, _, arity = token.partition(":")
    try:
        return VariableSpec(name, int(arity) if arity else 2)
    except (ValueError, RacboxError) as exc:
        raise CodecError(f"bad variable {token!r}", line=line) from exc


def dumps_box(box: BipartiteBox) -> str:
    """Serialize a box to the canonical text format."""
    lines = [HEADER]
    for role, specs in zip(ROLES, (box.alice_inputs, box.alice_outputs, box.bob_inputs, box.bob_outputs)):
        lines.append(f"{role}: {' '.join(_format_spec(s) for s in specs)}".rstrip())
    lines.append("table:")
    for key in assignments(box.input_specs):
        row = box.table[key]
        entries = [
            " ".join([*map(str, out), format_fraction(p)]) for out, p in sorted(row.items())
        ]
        lines.append(f"{' '.join(map(str, key))} -> {' | '.join(entries)}".strip())
    return "\n".join(lines) + "\n"


def loads_box(text: str) -> BipartiteBox:
    """Parse the canonical text format; raises CodecError on malformed input."""
    lines = [
        (number, raw.strip())
        for number, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.strip().startswith("#")
    ]
    if not lines or lines[0][1] != HEADER:
        raise CodecError(f"expected header {HEADER!r}", line=lines[0][0] if lines else 1)

    specs: dict[str, tuple[VariableSpec, ...]] = {}
    position = 1
    for role in ROLES:
        if position >= len(lines):
            raise CodecError(f"missing '{role}:' line", line=lines[-1][0])
        number, content = lines[position]
        label, sep, rest = content.partition(":")
        if not sep or label.strip() != role:
            raise CodecError(f"expected '{role}:'", line=number)
        specs[role] = tuple(_parse_spec(tok, number) for tok in rest.split())
        position += 1
    if position >= len(lines) or lines[position][1] != "table:":
        raise CodecError("expected 'table:'", line=lines[min(position, len(lines) - 1)][0])
    position += 1

    n_inputs = len(specs["alice inputs"]) + len(specs["bob inputs"])
    n_outputs = len(specs["alice outputs"]) + len(specs["bob outputs"])
    table: dict[tuple[int, ...], dict[tuple[int, ...], Fraction]] = {}
    for number, content in lines[position:]:
        left, arrow, right = content.partition("->")
        if not arrow:
            raise CodecError("expected '->'", line=number)
        try:
            key = tuple(int(tok) for tok in left.split())
        except ValueError as exc:
            raise CodecError("input values must be integers", line=number) from exc
        if len(key) != n_inputs:
            raise CodecError(f"expected {n_inputs} input values", line=number)
        if key in table:
            raise CodecError("duplicate input assignment", line=number)
        row: dict[tuple[int, ...], Fraction] = {}
        for entry in right.split("|"):
            tokens = entry.split()
            if len(tokens) != n_outputs + 1:
                raise CodecError(f"expected {n_outputs} output values and a probability", line=number)
            try:
                out = tuple(int(tok) for tok in tokens[:-1])
                p = Fraction(tokens[-1])
            except (ValueError, ZeroDivisionError) as exc:
                raise CodecError(f"bad entry {entry.strip()!r}", line=number) from exc
            row[out] = row.get(out, Fraction(0)) + p
        table[key] = row

    return BipartiteBox(
        specs["alice inputs"], specs["alice outputs"], specs["bob inputs"], specs["bob outputs"], table
    )


def read_box_file(path: str | Path) -> BipartiteBox:
    """Load a box from a text file; unreadable files raise CodecError."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise CodecError("cannot read box file", path=str(path), reason=str(exc)) from exc
    return loads_box(text)


def write_box_file(path: str | Path, box: BipartiteBox) -> None:
    """Write a box to a text file."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_box(box))
