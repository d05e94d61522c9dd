"""Line-oriented instance files.

::

    # comments run to end of line
    teams 4
    name 0 Ajax                 # optional display names
    coalition 0 3               # optional; default empty
    model 2 0:2 1:1 2:0         # optional; default win-loss "model 1 0:1 1:0"
    game 0 1 1 0                # one line per unordered pair: i j points_i points_j
    seed 0 1 2 3                # optional cup/bracket leaf or rank order

``teams`` must come before any line naming a team.  Diagnostics carry the
1-based line and column of the offending token.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import WIN_LOSS, ScoringModel, Tournament
from .errors import InvalidOutcome, ManipulationError


class ParseError(ManipulationError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class ValidationError(ManipulationError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line
        self.message = message


@dataclass(frozen=True)
class InstanceFile:
    tournament: Tournament
    coalition: frozenset = frozenset()
    model_total: int | None = None
    seed: tuple | None = None
    names: dict = field(default_factory=dict)

    @property
    def model(self) -> ScoringModel:
        return self.tournament.model

    def team_id(self, token: str) -> int:
        """Resolve a numeric id or a display name."""
        if token.lstrip("-").isdigit():
            v = int(token)
        else:
            rev = {name: k for k, name in self.names.items()}
            if token not in rev:
                raise ValidationError(f"unknown team {token!r}")
            v = rev[token]
        if not 0 <= v < self.tournament.m:
            raise ValidationError(f"team {v} out of range 0..{self.tournament.m - 1}")
        return v

    def team_name(self, v: int) -> str:
        return self.names.get(v, str(v))


def _tokens(raw: str):
    """(column, token) pairs of a line with comments removed."""
    body = raw.split("#", 1)[0]
    col = 0
    out = []
    for tok in body.split():
        col = body.index(tok, col)
        out.append((col + 1, tok))
        col += len(tok)
    return out


def parse_instance(text: str) -> InstanceFile:
    m = None
    coalition: set = set()
    model_total = None
    model = WIN_LOSS
    model_line = None
    seed = None
    names: dict = {}
    games: dict = {}
    game_lines: dict = {}

    def integer(lineno, col, tok):
        try:
            return int(tok)
        except ValueError:
            raise ParseError(lineno, col, f"expected an integer, got {tok!r}") from None

    def team(lineno, col, tok):
        if m is None:
            raise ParseError(lineno, col, "'teams' must precede any team id")
        v = integer(lineno, col, tok)
        if not 0 <= v < m:
            raise ValidationError(f"team id {v} out of range 0..{m - 1}", lineno)
        return v

    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw)
        if not toks:
            continue
        (kcol, kw), args = toks[0], toks[1:]
        if kw == "teams":
            if m is not None:
                raise ParseError(lineno, kcol, "duplicate 'teams' line")
            if len(args) != 1:
                raise ParseError(lineno, kcol, "usage: teams <m>")
            m = integer(lineno, *args[0])
            if m < 1:
                raise ValidationError("need at least one team", lineno)
        elif kw == "name":
            if len(args) < 2:
                raise ParseError(lineno, kcol, "usage: name <id> <label>")
            v = team(lineno, *args[0])
            label = " ".join(tok for _, tok in args[1:])
            if label.lstrip("-").isdigit():
                raise ValidationError(f"name {label!r} would shadow a team id", lineno)
            names[v] = label
        elif kw == "coalition":
            for col, tok in args:
                v = team(lineno, col, tok)
                if v in coalition:
                    raise ValidationError(f"team {v} listed twice in the coalition", lineno)
                coalition.add(v)
        elif kw == "model":
            if model_line is not None:
                raise ParseError(lineno, kcol, "duplicate 'model' line")
            if len(args) < 2:
                raise ParseError(lineno, kcol, "usage: model <n> <a:b> <a:b> ...")
            model_total = integer(lineno, *args[0])
            pairs = set()
            for col, tok in args[1:]:
                a, sep, b = tok.partition(":")
                if not sep:
                    raise ParseError(lineno, col, f"outcome must look like a:b, got {tok!r}")
                pair = (integer(lineno, col, a), integer(lineno, col, b))
                if min(pair) < 0:
                    raise ValidationError(f"negative points in {tok!r}", lineno)
                if pair in pairs:
                    raise ValidationError(f"outcome {tok!r} listed twice", lineno)
                pairs.add(pair)
            if len(pairs) < 2:
                raise ValidationError("a scoring model needs at least two outcomes", lineno)
            model = ScoringModel(frozenset(pairs))
            model_line = lineno
        elif kw == "game":
            if len(args) != 4:
                raise ParseError(lineno, kcol, "usage: game <i> <j> <points_i> <points_j>")
            i = team(lineno, *args[0])
            j = team(lineno, *args[1])
            if i == j:
                raise ValidationError(f"team {i} cannot play itself", lineno)
            pi = integer(lineno, *args[2])
            pj = integer(lineno, *args[3])
            key = (min(i, j), max(i, j))
            if key in games:
                raise ValidationError(
                    f"duplicate game {key[0]}-{key[1]} (first on line {game_lines[key]})", lineno
                )
            games[key] = (pi, pj) if i < j else (pj, pi)
            game_lines[key] = lineno
        elif kw == "seed":
            if seed is not None:
                raise ParseError(lineno, kcol, "duplicate 'seed' line")
            order = [team(lineno, col, tok) for col, tok in args]
            if sorted(order) != list(range(m)):
                raise ValidationError("seed must list every team exactly once", lineno)
            seed = tuple(order)
        else:
            raise ParseError(lineno, kcol, f"unknown directive {kw!r}")

    if m is None:
        raise ValidationError("missing 'teams' line")
    for key, outcome in games.items():
        if outcome not in model:
            raise ValidationError(
                f"game {key[0]}-{key[1]} outcome {outcome[0]}:{outcome[1]} is not in the scoring model",
                game_lines[key],
            )
    for i in range(m):
        for j in range(i + 1, m):
            if (i, j) not in games:
                raise ValidationError(f"missing game {i}-{j}")
    try:
        t = Tournament.from_results(m, games, model)
    except InvalidOutcome as exc:  # pragma: no cover - caught per game above
        raise ValidationError(str(exc)) from None
    if model_total is not None and model.n is not None and model.n != model_total:
        raise ValidationError(f"model total {model_total} but outcomes sum to {model.n}", model_line)
    return InstanceFile(t, frozenset(coalition), model_total, seed, names)


def serialize_instance(inst: InstanceFile) -> str:
    t = inst.tournament
    lines = [f"teams {t.m}"]
    for v in sorted(inst.names):
        lines.append(f"name {v} {inst.names[v]}")
    if inst.coalition:
        lines.append("coalition " + " ".join(str(v) for v in sorted(inst.coalition)))
    if t.model != WIN_LOSS or inst.model_total is not None:
        total = inst.model_total
        if total is None:
            total = t.model.n if t.model.n is not None else max(a + b for a, b in t.model.outcomes)
        outs = " ".join(f"{a}:{b}" for a, b in sorted(t.model.outcomes))
        lines.append(f"model {total} {outs}")
    for i, j in t.games():
        pi, pj = t.result(i, j)
        lines.append(f"game {i} {j} {pi} {pj}")
    if inst.seed is not None:
        lines.append("seed " + " ".join(str(v) for v in inst.seed))
    return "\n".join(lines) + "\n"
