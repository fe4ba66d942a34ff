"""Built-in example configurations and TOML config loading.

A configuration names an ambient braided category, the generating labels
of the symmetric subcategory to condense, and run parameters (backend,
tolerance, seed).  The shipped presets cover a pointed toric category, the
Drinfeld double of S3, a fully symmetric ambient category, a product whose
spectrum is strictly between trivial and full, the double of Z2, and a
deliberately inconsistent braiding used as a negative control.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import tomli

from .category import Category, braiding
from .crossprod import GaloisExtension
from .frobenius import RegularAlgebra, regular_algebra
from .generators import (
    SubcategorySpec,
    drinfeld_double,
    pointed_category,
    product_category,
    rep_category,
    tannakian_subcategory,
)
from .groups import FiniteGroup, cyclic, group_preset, symmetric3

TORIC_LABELS = {"0,0": "1", "0,1": "e", "1,0": "m", "1,1": "psi"}


class ConfigError(Exception):
    """Invalid or inconsistent run configuration."""


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    generators: tuple[str, ...]
    default_backend: str
    factory: Callable[[bool, float, int], Category]


def _toric(exact: bool, tol: float, seed: int) -> Category:
    return pointed_category([2, 2], [[0, 1], [0, 0]], exact=exact, tol=tol,
                            labels=TORIC_LABELS, seed=seed)


def _corrupted_toric(exact: bool, tol: float, seed: int) -> Category:
    """Toric category with the braiding of one ordered pair (and its
    reverse) flipped in sign.  Monodromies and twists are unchanged, so
    only the hexagon identities detect the inconsistency."""
    cat = _toric(exact, tol, seed)
    m = cat.simple_by_label("m")
    psi = cat.simple_by_label("psi")
    cat.braid_overrides[("m", "psi")] = -braiding(m, psi).mat
    cat.braid_overrides[("psi", "m")] = -braiding(psi, m).mat
    return cat


def _ds3(exact: bool, tol: float, seed: int) -> Category:
    return drinfeld_double(symmetric3(), exact=exact, tol=tol, seed=seed)


def _repz4(exact: bool, tol: float, seed: int) -> Category:
    return rep_category(cyclic(4), exact=exact, tol=tol, seed=seed)


def _toric_x_repz2(exact: bool, tol: float, seed: int) -> Category:
    return product_category(
        _toric(exact, tol, seed),
        rep_category(cyclic(2), exact=exact, tol=tol, seed=seed))


def _double_z2(exact: bool, tol: float, seed: int) -> Category:
    return drinfeld_double(cyclic(2), exact=exact, tol=tol, seed=seed)


PRESETS: dict[str, Preset] = {p.name: p for p in [
    Preset("toric-code",
           "pointed Z2xZ2 category, condensing the charge boson",
           ("e",), "exact", _toric),
    Preset("ds3",
           "Drinfeld double of S3, condensing the unit-class subcategory",
           ("e:chi2",), "float", _ds3),
    Preset("repz4-z2",
           "Rep(Z4), condensing the order-two character",
           ("chi2",), "exact", _repz4),
    Preset("toric-x-repz2",
           "product of the toric category with Rep(Z2)",
           ("e*chi0", "1*chi1"), "exact", _toric_x_repz2),
    Preset("drinfeld-z2",
           "Drinfeld double of Z2, condensing the trivially graded sign character",
           ("0:chi1",), "exact", _double_z2),
    Preset("corrupted-hexagon",
           "toric category with one braiding pair sign-flipped (negative control)",
           ("e",), "exact", _corrupted_toric),
]}


@dataclass
class RunConfig:
    example: str
    backend: str
    tol: float
    seed: int
    cat: Category
    spec: SubcategorySpec


def _check_backend(backend: str) -> str:
    if backend not in ("exact", "float"):
        raise ConfigError(f"backend must be 'exact' or 'float', got {backend!r}")
    return backend


def resolve_preset(name: str, backend: str | None = None,
                   tol: float | None = None, seed: int | None = None) -> RunConfig:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; have {sorted(PRESETS)}")
    p = PRESETS[name]
    backend = _check_backend(backend or p.default_backend)
    tol = 1e-9 if tol is None else float(tol)
    seed = 0 if seed is None else int(seed)
    if tol < 0:
        raise ConfigError("tolerance must be nonnegative")
    cat = p.factory(backend == "exact", tol, seed)
    spec = tannakian_subcategory(cat, list(p.generators))
    return RunConfig(name, backend, tol, seed, cat, spec)


def _group_from_table(section: dict) -> FiniteGroup:
    if "preset" in section:
        try:
            return group_preset(section["preset"])
        except KeyError as exc:
            raise ConfigError(str(exc)) from exc
    if "table" not in section or "names" not in section:
        raise ConfigError("[group] needs either preset or names+table")
    try:
        return FiniteGroup.from_table(section["names"], section["table"])
    except ValueError as exc:
        raise ConfigError(f"bad group table: {exc}") from exc


def resolve_file(path: str, backend: str | None = None,
                 tol: float | None = None, seed: int | None = None) -> RunConfig:
    """Load a TOML run configuration from a file.

    The category is given either by ``[category] preset = "name"`` or
    inline: ``[pointed]`` with ``group``/``bichar_exponents``/optional
    ``labels``, or ``[group]`` (``preset`` or ``names``+``table``) with
    ``kind = "rep" | "double"``.  ``[subcategory] generators`` lists the
    simple labels to condense; ``[run]`` holds backend/tol/seed defaults.
    """
    try:
        with open(path, "rb") as fh:
            data = tomli.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except tomli.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {path!r}: {exc}") from exc
    return _resolve_data(data, path, backend, tol, seed)


def resolve_toml(text: str, name: str = "inline", backend: str | None = None,
                 tol: float | None = None, seed: int | None = None) -> RunConfig:
    """Resolve a TOML run configuration given as a string."""
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from exc
    return _resolve_data(data, name, backend, tol, seed)


def _resolve_data(data: dict, name: str, backend: str | None,
                  tol: float | None, seed: int | None) -> RunConfig:
    run = data.get("run", {})
    backend = backend or run.get("backend")  # None: preset default or "float"
    tol = float(run.get("tol", 1e-9)) if tol is None else float(tol)
    seed = int(run.get("seed", 0)) if seed is None else int(seed)

    preset_name = data.get("category", {}).get("preset")
    if preset_name is not None:
        cfg = resolve_preset(preset_name, backend=backend, tol=tol, seed=seed)
        gens = data.get("subcategory", {}).get("generators")
        if gens:
            cfg.spec = tannakian_subcategory(cfg.cat, list(gens))
        return cfg
    backend = _check_backend(backend or "float")
    exact = backend == "exact"

    if ("pointed" in data) == ("group" in data):
        raise ConfigError("config needs exactly one of [pointed] or [group]"
                          " (or [category] preset)")
    if "pointed" in data:
        sec = data["pointed"]
        for key in ("group", "bichar_exponents"):
            if key not in sec:
                raise ConfigError(f"[pointed] is missing {key!r}")
        try:
            cat = pointed_category(
                [int(n) for n in sec["group"]], sec["bichar_exponents"],
                exact=exact, tol=tol, labels=sec.get("labels"), seed=seed)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    else:
        sec = data["group"]
        grp = _group_from_table(sec)
        kind = sec.get("kind", "rep")
        if kind == "rep":
            cat = rep_category(grp, exact=exact, tol=tol, seed=seed)
        elif kind == "double":
            cat = drinfeld_double(grp, exact=exact, tol=tol, seed=seed)
        else:
            raise ConfigError(f"[group] kind must be 'rep' or 'double', got {kind!r}")

    gens = data.get("subcategory", {}).get("generators")
    if not gens:
        raise ConfigError("[subcategory] generators must list at least one label")
    try:
        spec = tannakian_subcategory(cat, list(gens))
    except KeyError as exc:
        raise ConfigError(f"unknown simple label in generators: {exc}") from exc
    name = data.get("category", {}).get("name", name)
    return RunConfig(name, backend, tol, seed, cat, spec)


def build_extension(cfg: RunConfig) -> tuple[RegularAlgebra, GaloisExtension]:
    """Run the condensation pipeline for a resolved configuration."""
    fr = regular_algebra(cfg.spec, seed=cfg.seed)
    return fr, GaloisExtension(fr, seed=cfg.seed)
