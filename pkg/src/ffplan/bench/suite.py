"""Suite files: one instance per line.

    gripper n=4
    blocksworld n=5 seed=3 ops=3
    blocksworld name=bw-para
    logistics cities=2 pkgs=3 seed=1

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .generators import gen_blocksworld, gen_gripper, gen_logistics

DOMAINS = ("gripper", "blocksworld", "logistics")


class SuiteError(ValueError):
    pass


@dataclass(frozen=True)
class SuiteEntry:
    domain: str
    params: tuple[tuple[str, int | str], ...] = ()
    seed: int = 0

    def texts(self) -> tuple[str, str]:
        p = dict(self.params)
        if self.domain == "gripper":
            return gen_gripper(int(p["n"]))
        if self.domain == "blocksworld":
            if p.get("name") == "bw-para":
                return gen_blocksworld("bw-para")
            return gen_blocksworld(int(p["n"]), self.seed, int(p.get("ops", 4)))
        return gen_logistics(int(p["cities"]), int(p["pkgs"]), self.seed)

    @property
    def name(self) -> str:
        p = dict(self.params)
        if self.domain == "gripper":
            return f"gripper-{p['n']}"
        if self.domain == "blocksworld":
            if p.get("name") == "bw-para":
                return "bw-para"
            return f"bw{p.get('ops', 4)}-{p['n']}-s{self.seed}"
        return f"logistics-{p['cities']}-{p['pkgs']}-s{self.seed}"


@dataclass(frozen=True)
class SuiteSpec:
    entries: tuple[SuiteEntry, ...] = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


_REQUIRED = {"gripper": {"n"}, "blocksworld": {"n"}, "logistics": {"cities", "pkgs"}}
_ALLOWED = {
    "gripper": {"n"},
    "blocksworld": {"n", "ops", "name", "seed"},
    "logistics": {"cities", "pkgs", "seed"},
}


def parse_suite(text: str) -> SuiteSpec:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        domain, *pairs = line.split()
        if domain not in DOMAINS:
            raise SuiteError(f"line {lineno}: unknown domain {domain!r}")
        params: dict[str, int | str] = {}
        for pair in pairs:
            key, sep, value = pair.partition("=")
            if not sep or key not in _ALLOWED[domain]:
                raise SuiteError(f"line {lineno}: bad parameter {pair!r}")
            params[key] = value if key == "name" else _natural(value, lineno)
        if params.get("name") not in (None, "bw-para"):
            raise SuiteError(f"line {lineno}: unknown named instance {params['name']!r}")
        missing = _REQUIRED[domain] - params.keys()
        if missing and "name" not in params:
            raise SuiteError(f"line {lineno}: missing {', '.join(sorted(missing))}")
        seed = int(params.pop("seed", 0))
        _check_ranges(domain, params, lineno)
        entries.append(SuiteEntry(domain, tuple(sorted(params.items())), seed))
    return SuiteSpec(tuple(entries))


def _natural(value: str, lineno: int) -> int:
    try:
        v = int(value)
    except ValueError:
        raise SuiteError(f"line {lineno}: {value!r} is not an integer") from None
    if v < 0:
        raise SuiteError(f"line {lineno}: {value!r} is negative")
    return v


def _check_ranges(domain: str, p: dict, lineno: int) -> None:
    if domain == "gripper" and p["n"] < 1:
        raise SuiteError(f"line {lineno}: gripper needs n >= 1")
    if domain == "blocksworld" and "name" not in p:
        if p["n"] < 2 or p.get("ops", 4) not in (3, 4):
            raise SuiteError(f"line {lineno}: blocksworld needs n >= 2 and ops 3 or 4")
    if domain == "logistics" and (p["cities"] < 1 or p["pkgs"] < 1):
        raise SuiteError(f"line {lineno}: logistics needs cities >= 1 and pkgs >= 1")
