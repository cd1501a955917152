"""Scenario files: sectioned ``key = value`` text describing a model, classes and points.

Example::

    [field]
    p = 7
    precision = 32

    [scheme]
    dim = 1
    boundary = x1
    vertical = true

    [classes]
    (quat p x1)

    [points]
    7
    -7

    [options]
    n = 3
    samples = 100
    seed = 1

``boundary`` may repeat; each line of ``[classes]`` is one class expression and
each line of ``[points]`` a comma-separated coordinate vector of integers or
rationals.  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd

from .brauer import parse_class, validate_class
from .divisor import SchemeModel
from .errors import ModelError, NonFactorable, ParseError, PDividesN, ValidationError
from .localfield import DEFAULT_PRECISION
from .ntheory import is_prime
from .poly import PolyRing, PolySyntaxError

SECTIONS = ("field", "scheme", "classes", "points", "options")
SAMPLING_COMMANDS = ("equiv", "verify-thm16")


@dataclass(frozen=True)
class Scenario:
    p: int
    precision: int = DEFAULT_PRECISION
    dim: int = 1
    boundary: tuple = ()
    vertical: bool = True
    classes: tuple = ()  # (line, text)
    points: tuple = ()  # (line, tuple of Fraction)
    n_values: tuple = ()
    samples: int | None = None
    seed: int | None = None

    @property
    def model(self):
        return SchemeModel.from_strings(self.p, self.dim, [b for _, b in self.boundary], self.vertical)

    def class_exprs(self):
        ring = PolyRing(self.dim, self.p)
        return [parse_class(text, ring) for _, text in self.classes]

    def with_overrides(self, seed=None, precision=None, samples=None):
        changes = {}
        if seed is not None:
            changes["seed"] = seed
        if precision is not None:
            if precision < 1:
                raise ValidationError("precision must be >= 1")
            changes["precision"] = precision
        if samples is not None:
            if samples < 1:
                raise ValidationError("samples must be >= 1")
            changes["samples"] = samples
        return replace(self, **changes)

    def require_for(self, command):
        """Raise ValidationError if the scenario cannot drive ``command``."""
        if command in SAMPLING_COMMANDS and self.seed is None:
            raise ValidationError(f"`{command}` samples points and needs a seed")
        if command in ("eval", "intersect") and not self.points:
            raise ValidationError(f"`{command}` needs a [points] section")
        return self


def _int(value, line, key):
    try:
        return int(value, 0)
    except ValueError:
        raise ParseError(line, f"{key} must be an integer, got {value!r}") from None


def _bool(value, line, key):
    v = value.lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise ParseError(line, f"{key} must be true or false, got {value!r}")


def _keyval(text, line):
    if "=" not in text:
        raise ParseError(line, f"expected `key = value`, got {text!r}")
    key, value = (s.strip() for s in text.split("=", 1))
    if not key or not value:
        raise ParseError(line, f"expected `key = value`, got {text!r}")
    return key, value


def _coord(text, line):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(line, f"bad coordinate {text.strip()!r}") from None


def parse_scenario(text, command=None):
    """Parse and validate scenario text; errors carry 1-based line numbers."""
    section = None
    seen = set()
    kv = {s: [] for s in ("field", "scheme", "options")}
    classes, points = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("[") and body.endswith("]"):
            section = body[1:-1].strip().lower()
            if section not in SECTIONS:
                raise ParseError(lineno, f"unknown section [{section}]")
            if section in seen:
                raise ParseError(lineno, f"duplicate section [{section}]")
            seen.add(section)
            continue
        if section is None:
            raise ParseError(lineno, "content before the first section header")
        if section == "classes":
            classes.append((lineno, body))
        elif section == "points":
            points.append((lineno, tuple(_coord(c, lineno) for c in body.split(","))))
        else:
            kv[section].append((lineno, *_keyval(body, lineno)))

    if "field" not in seen:
        raise ParseError(1, "missing [field] section")
    args = {}
    for line, key, value in kv["field"]:
        if key == "p":
            args["p"] = _int(value, line, key)
            if not is_prime(args["p"]):
                raise ValidationError(f"line {line}: p={args['p']} is not prime")
        elif key == "precision":
            args["precision"] = _int(value, line, key)
            if args["precision"] < 1:
                raise ValidationError(f"line {line}: precision must be >= 1")
        else:
            raise ParseError(line, f"unknown [field] key {key!r}")
    if "p" not in args:
        raise ParseError(1, "[field] must set p")
    p = args["p"]

    boundary = []
    for line, key, value in kv["scheme"]:
        if key == "dim":
            args["dim"] = _int(value, line, key)
            if args["dim"] < 1:
                raise ValidationError(f"line {line}: dim must be >= 1")
        elif key == "boundary":
            boundary.append((line, value))
        elif key == "vertical":
            args["vertical"] = _bool(value, line, key)
        else:
            raise ParseError(line, f"unknown [scheme] key {key!r}")
    dim = args.get("dim", 1)

    n_values = []
    for line, key, value in kv["options"]:
        if key == "n":
            for tok in value.replace(",", " ").split():
                n = _int(tok, line, key)
                if n < 1:
                    raise ValidationError(f"line {line}: n must be positive")
                if gcd(n, p) != 1:
                    raise ValidationError(f"line {line}: n={n} is not coprime to p={p}")
                n_values.append(n)
        elif key in ("samples", "seed"):
            args[key] = _int(value, line, key)
            if key == "samples" and args[key] < 1:
                raise ValidationError(f"line {line}: samples must be >= 1")
        else:
            raise ParseError(line, f"unknown [options] key {key!r}")

    ring = PolyRing(dim, p)
    for line, value in boundary:
        try:
            ring.parse(value)
        except PolySyntaxError as exc:
            raise ParseError(line, str(exc)) from None
    scen = Scenario(
        boundary=tuple(boundary),
        classes=tuple(classes),
        points=tuple(points),
        n_values=tuple(n_values),
        **args,
    )
    try:
        model = scen.model
    except ModelError as exc:
        raise ValidationError(str(exc)) from None
    for line, body in classes:
        try:
            expr = parse_class(body, ring)
        except ValidationError as exc:
            raise ParseError(line, str(exc)) from None
        try:
            validate_class(expr, model)
        except (NonFactorable, PDividesN, ValidationError) as exc:
            raise ValidationError(f"line {line}: {exc}") from None
    for line, coords in points:
        if len(coords) != dim:
            raise ValidationError(f"line {line}: point has {len(coords)} coordinates, dim is {dim}")
        if any(c.denominator % p == 0 for c in coords):
            raise ValidationError(f"line {line}: coordinates must be p-adic integers")
    if command is not None:
        scen.require_for(command)
    return scen


def load_scenario(path, command=None):
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read(), command)


__all__ = ["Scenario", "parse_scenario", "load_scenario", "SECTIONS"]
