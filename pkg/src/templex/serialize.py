"""Text and JSON serialisation for templates, reports, and run manifests.

Two formats live here.  The template text format is the bit-exact
interchange format used by the CLI: a header line ``host <name> <n> <k>``
followed by one line per ground-set element in the host's canonical
order, each line holding the element index (0-based) and the palette as
comma-joined colours.  JSON reports serialise big integers as decimal
strings and rationals as ``"num/den"`` so that no reader needs arbitrary
precision floats; every report carries ``schema: 1``.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .core import Template, colours_of, mask_of
from .hosts import host_from_name

SCHEMA_VERSION = 1


def template_to_text(template: Template) -> str:
    """Render a template in the canonical text format."""
    host = template.host
    lines = [f"host {host.kind} {host.n} {template.k}"]
    for index, mask in enumerate(template.palettes):
        joined = ",".join(str(c) for c in colours_of(mask))
        lines.append(f"{index} {joined}")
    return "\n".join(lines) + "\n"


def template_from_text(text: str) -> Template:
    """Parse the canonical text format back into a template.

    Raises ValueError on malformed input: a bad header, an index out of
    order, a missing element line, or a colour outside 1..k.
    """
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty template text")
    header = lines[0].split()
    if len(header) != 4 or header[0] != "host":
        raise ValueError(f"bad template header: {lines[0]!r}")
    kind, n_str, k_str = header[1], header[2], header[3]
    host = host_from_name(kind, int(n_str))
    k = int(k_str)
    body = lines[1:]
    if len(body) != host.size:
        raise ValueError(
            f"expected {host.size} element lines for {kind} n={host.n}, got {len(body)}"
        )
    palettes = []
    for expected_index, line in enumerate(body):
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"bad element line: {line!r}")
        if int(parts[0]) != expected_index:
            raise ValueError(
                f"element lines out of order: saw {parts[0]}, expected {expected_index}"
            )
        colours = [int(c) for c in parts[1].split(",")]
        palettes.append(mask_of(colours))
    return Template(host, k, tuple(palettes))


def write_template(path: Path | str, template: Template) -> None:
    Path(path).write_text(template_to_text(template), encoding="ascii")


def read_template(path: Path | str) -> Template:
    return template_from_text(Path(path).read_text(encoding="ascii"))


def jsonable(value: Any) -> Any:
    """Convert a value to a JSON-safe form.

    Ints wider than 53 bits become decimal strings (so every consumer
    reads them losslessly), Fractions become "num/den" strings, and
    containers are converted recursively.  Small ints stay native.
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        if -(2**53) < value < 2**53:
            return value
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        raise TypeError(
            f"refusing to serialise float {value!r}; reports are exact, use Fraction"
        )
    if isinstance(value, str):
        return value
    if isinstance(value, Template):
        return template_to_text(value)
    if isinstance(value, Mapping):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    raise TypeError(f"cannot serialise {type(value).__name__}")


def write_report(path: Path | str, payload: Mapping[str, Any]) -> None:
    """Write a schema-stamped JSON report with deterministic layout."""
    body = {"schema": SCHEMA_VERSION}
    body.update(jsonable(payload))
    text = json.dumps(body, indent=2, sort_keys=True) + "\n"
    Path(path).write_text(text, encoding="ascii")


def read_report(path: Path | str) -> dict:
    return json.loads(Path(path).read_text(encoding="ascii"))


def file_digest(path: Path | str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def run_manifest(
    command: str,
    options: Mapping[str, Any],
    *,
    seeds: Sequence[int] = (),
    input_digests: Mapping[str, str] | None = None,
    started: float | None = None,
) -> dict:
    """Build the reproduction manifest written next to every CLI report.

    The manifest records the subcommand, the complete resolved option
    set, the seeds in play, the artifact version, digests of any input
    files, and wall-clock timestamps.  Everything except the timestamps
    is stable across reruns, which is what the byte-reproducibility
    tests key on.
    """
    from . import __version__

    now = time.time()
    return {
        "command": command,
        "options": dict(sorted(options.items())),
        "seeds": list(seeds),
        "version": __version__,
        "input_digests": dict(sorted((input_digests or {}).items())),
        "started_at": repr(started if started is not None else now),
        "finished_at": repr(now),
        "argv": sys.argv[1:],
    }


MANIFEST_VOLATILE_KEYS = frozenset({"started_at", "finished_at"})


def write_manifest(path: Path | str, manifest: Mapping[str, Any]) -> None:
    write_report(path, manifest)


def stable_manifest_view(manifest: Mapping[str, Any]) -> dict:
    """The manifest minus its volatile keys, for reproducibility checks."""
    return {k: v for k, v in manifest.items() if k not in MANIFEST_VOLATILE_KEYS}


def write_csv(path: Path | str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write a minimal CSV with exact (string-formatted) cells."""
    out = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, Fraction):
                cells.append(f"{cell.numerator}/{cell.denominator}")
            else:
                cells.append(str(cell))
        out.append(",".join(cells))
    Path(path).write_text("\n".join(out) + "\n", encoding="ascii")
