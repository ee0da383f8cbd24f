"""Declarative text format for wirings.

    wiring v1 pr-to-racbox
    alice inputs: x0 x1
    alice outputs: a
    bob inputs: y y_prime
    bob outputs: b
    shared s
    alice random r_a = 1/2 1/2
    alice pre:
      box.x = xor x0 x1
    alice post:
      a = xor box.a x0
    message:
      m = copy box.a
    bob pre:
      box.y = copy y
    bob post:
      b = xor box.b y_prime

Random declarations (`shared`, `alice random`, `bob random`) take one
variable each, written name or name:arity, with an optional distribution.
Without a `message:` block the wiring has no message.
"""

from fractions import Fraction
from pathlib import Path

from core.boxes.models import VariableSpec
from core.errors import CodecError, RacboxError
from core.rational import format_fraction

from .gates import format_gate, parse_gate
from .models import RandomnessSpec, Stage, Wiring

HEADER = "wiring v1"
ROLES = ("alice inputs", "alice outputs", "bob inputs", "bob outputs")
RANDOM_KINDS = ("shared", "alice random", "bob random")


def _format_spec(spec: VariableSpec) -> str:
    return spec.name if spec.arity == 2 else f"{spec.name}:{spec.arity}"


def _parse_spec(token: str, line: int) -> VariableSpec:
    name, _, arity = token.partition(":")
    try:
        return VariableSpec(name, int(arity) if arity else 2)
    except (ValueError, RacboxError) as exc:
        raise CodecError(f"bad variable {token!r}", line=line) from exc


def dumps_wiring(wiring: Wiring, randomness: RandomnessSpec | None = None) -> str:
    """Serialize a wiring and the distributions of its random variables."""
    randomness = randomness or RandomnessSpec()
    lines = [f"{HEADER} {wiring.name}".rstrip()]
    for role, specs in zip(
        ROLES, (wiring.alice_inputs, wiring.alice_outputs, wiring.bob_inputs, wiring.bob_outputs)
    ):
        lines.append(f"{role}: {' '.join(_format_spec(s) for s in specs)}".rstrip())
    for kind, specs in zip(RANDOM_KINDS, (wiring.shared, wiring.alice_random, wiring.bob_random)):
        for spec in specs:
            line = f"{kind} {_format_spec(spec)}"
            if spec.name in randomness.distributions:
                line += " = " + " ".join(format_fraction(p) for p in randomness.distribution(spec))
            lines.append(line)
    for stage, gates in wiring.stages():
        lines.append(f"{stage.value}:")
        lines.extend(f"  {format_gate(g)}" for g in gates)
    return "\n".join(lines) + "\n"


def loads_wiring(text: str) -> tuple[Wiring, RandomnessSpec]:
    """Parse the wiring text format; raises CodecError on malformed input."""
    lines = [
        (number, raw.strip())
        for number, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.strip().startswith("#")
    ]
    if not lines or not lines[0][1].startswith(HEADER):
        raise CodecError(f"expected header {HEADER!r}", line=lines[0][0] if lines else 1)
    name = lines[0][1][len(HEADER):].strip()

    roles: dict[str, tuple[VariableSpec, ...]] = {}
    randoms: dict[str, list[VariableSpec]] = {kind: [] for kind in RANDOM_KINDS}
    distributions: dict[str, tuple[Fraction, ...]] = {}
    stages: dict[Stage, list] = {}
    current: Stage | None = None
    stage_names = {stage.value: stage for stage in Stage}

    for number, content in lines[1:]:
        label = content[:-1] if content.endswith(":") else None
        if label in stage_names:
            current = stage_names[label]
            if current in stages:
                raise CodecError(f"duplicate stage {label!r}", line=number)
            stages[current] = []
            continue
        head, sep, rest = content.partition(":")
        if current is None and sep and head.strip() in ROLES:
            roles[head.strip()] = tuple(_parse_spec(tok, number) for tok in rest.split())
            continue
        kind = next((k for k in RANDOM_KINDS if content.startswith(k + " ")), None)
        if current is None and kind is not None:
            declaration, eq, probs = content[len(kind):].partition("=")
            spec = _parse_spec(declaration.strip(), number)
            randoms[kind].append(spec)
            if eq:
                try:
                    distributions[spec.name] = tuple(Fraction(tok) for tok in probs.split())
                except (ValueError, ZeroDivisionError) as exc:
                    raise CodecError("bad distribution", line=number) from exc
            continue
        if current is None:
            raise CodecError(f"unexpected line {content!r}", line=number)
        stages[current].append(parse_gate(content, line=number))

    missing = [role for role in ROLES if role not in roles]
    if missing:
        raise CodecError(f"missing declarations: {', '.join(missing)}", line=lines[0][0])
    try:
        wiring = Wiring(
            alice_inputs=roles["alice inputs"],
            alice_outputs=roles["alice outputs"],
            bob_inputs=roles["bob inputs"],
            bob_outputs=roles["bob outputs"],
            alice_pre=tuple(stages.get(Stage.ALICE_PRE, ())),
            alice_post=tuple(stages.get(Stage.ALICE_POST, ())),
            message=tuple(stages[Stage.MESSAGE]) if Stage.MESSAGE in stages else None,
            bob_pre=tuple(stages.get(Stage.BOB_PRE, ())),
            bob_post=tuple(stages.get(Stage.BOB_POST, ())),
            shared=tuple(randoms["shared"]),
            alice_random=tuple(randoms["alice random"]),
            bob_random=tuple(randoms["bob random"]),
            name=name,
        )
        randomness = RandomnessSpec(distributions)
        for spec in wiring.shared + wiring.alice_random + wiring.bob_random:
            randomness.distribution(spec)
    except CodecError:
        raise
    except RacboxError as exc:
        raise CodecError(str(exc)) from exc
    return wiring, randomness


def read_wiring_file(path: str | Path) -> tuple[Wiring, RandomnessSpec]:
    """Load a wiring from a text file; unreadable files raise CodecError."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise CodecError("cannot read wiring file", path=str(path), reason=str(exc)) from exc
    return loads_wiring(text)


def write_wiring_file(path: str | Path, wiring: Wiring, randomness: RandomnessSpec | None = None) -> None:
    """Write a wiring to a text file."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_wiring(wiring, randomness))
