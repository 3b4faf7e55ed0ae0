"""Configuration, cached construction and the convention search.

A :class:`Session` owns one algebra, its resolution and everything computed
from it.  Resolutions are pickled to a cache file whose name is a hash of
every input that can change the result: field, depth, sign convention and
the bytes of all data files.
"""

from __future__ import annotations

import hashlib
import json
import logging
import pickle
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import List, Optional, Tuple, Union

from . import __version__
from .algebra import DATA_DIR, FiniteAlgebra, KoszulDual, Presentation
from .brackets import Brackets
from .cohomology import Cohomology, GeneratorTable, Polynomials
from .facts import verify_homotopies, verify_liftings
from .linalg import Field
from .resolution import SIGN_VARIANTS, Resolution, ResolutionConfig

log = logging.getLogger(__name__)

ORIENTATIONS = ("left-right", "right-left")
MIN_DEPTH = 5


def parse_field(text: str) -> Field:
    """``"rational"`` or ``"fp:<p>"``; characteristics 2 and 3 are rejected."""
    F = Field.parse(text)
    if F.char in (2, 3):
        raise ValueError(f"fp:{F.char}: the characteristic must be a prime greater than 3")
    return F


@dataclass(frozen=True)
class Config:
    field: str = "rational"
    depth: int = 8
    sign_variant: Union[str, int] = 3
    orientation: str = "left-right"
    solve_order: str = "natural"
    cache_path: Optional[str] = None
    data_dir: Optional[str] = None
    jobs: int = 1

    def __post_init__(self):
        parse_field(self.field)
        if self.depth < MIN_DEPTH:
            raise ValueError(f"depth must be at least {MIN_DEPTH} for the generator suite")
        if self.sign_variant != "auto" and int(self.sign_variant) not in SIGN_VARIANTS:
            raise ValueError(f"sign_variant must be 'auto' or one of {sorted(SIGN_VARIANTS)}")
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}")
        if self.solve_order not in ("natural", "reversed"):
            raise ValueError("solve_order must be 'natural' or 'reversed'")

    @property
    def data(self) -> Path:
        return Path(self.data_dir) if self.data_dir else DATA_DIR

    def data_file(self, *parts: str) -> Path:
        path = self.data.joinpath(*parts)
        if not path.exists():
            raise FileNotFoundError(f"missing data file {path}")
        return path

    def resolution_config(self) -> ResolutionConfig:
        return ResolutionConfig(depth=self.depth, orientation=self.orientation,
                                sign_variant=int(self.sign_variant), solve_order=self.solve_order)

    def public(self) -> dict:
        d = asdict(self)
        for k in ("cache_path", "data_dir", "jobs"):
            d.pop(k)
        return d


DATA_FILES = ("presentations/fk3.json", "fb0_fact.json", "generators.json", "cup_identities.json",
              "facts_homotopies.json", "facts_liftings.json", "expected_table.json")


def cache_key(cfg: Config) -> str:
    h = hashlib.sha256()
    h.update(json.dumps({"version": __version__, **cfg.public()}, sort_keys=True).encode())
    for name in DATA_FILES:
        h.update(name.encode())
        h.update(cfg.data_file(name).read_bytes())
    return h.hexdigest()[:20]


def build_resolution(cfg: Config) -> Resolution:
    F = parse_field(cfg.field)
    pres = Presentation.load(cfg.data_file("presentations", "fk3.json"))
    A = FiniteAlgebra(pres, F)
    D = KoszulDual(pres, F)
    return Resolution(A, D, cfg.resolution_config(), fb0_path=cfg.data_file("fb0_fact.json"))


def convention_passes(R: Resolution, data: Path) -> Tuple[bool, dict]:
    """Complex, exactness and every printed homotopy and lifting fact."""
    sq = R.check_square_zero()
    ex = R.check_exactness()
    hom = verify_homotopies(R, data / "facts_homotopies.json")
    lif = verify_liftings(R, data / "facts_liftings.json")
    info = {"square_zero": all(sq.values()), "exact": all(ex.values()),
            "homotopy_facts": [hom.passed, len(hom.failed)],
            "lifting_facts": [lif.passed, len(lif.failed)]}
    ok = info["square_zero"] and info["exact"] and hom.ok and lif.ok
    return ok, info


def select_convention(cfg: Config) -> Tuple[Config, List[dict]]:
    """Try every orientation and sign pattern; keep the unique one that passes.

    Raises ``ValueError`` if none or several pass.
    """
    trials = []
    winners = []
    for orientation in ORIENTATIONS:
        for variant in sorted(SIGN_VARIANTS):
            cand = replace(cfg, orientation=orientation, sign_variant=variant)
            try:
                R = build_resolution(cand)
                ok, info = convention_passes(R, cfg.data)
            except Exception as exc:  # a wrong convention may fail anywhere in the build
                ok, info = False, {"error": f"{type(exc).__name__}: {exc}"}
            trials.append({"orientation": orientation, "sign_variant": variant, "ok": ok, **info})
            if ok:
                winners.append(cand)
    if len(winners) != 1:
        raise ValueError(f"{len(winners)} sign conventions pass the printed facts; expected exactly one")
    return winners[0], trials


class Session:
    """Lazily built objects for one configuration."""

    def __init__(self, cfg: Config = Config()):
        self.trials: List[dict] = []
        if cfg.sign_variant == "auto":
            cfg, self.trials = select_convention(cfg)
        self.cfg = cfg
        self._R: Optional[Resolution] = None
        self._C = self._G = self._P = self._B = None
        self.cache_hit = False

    # ---- resolution with caching ---------------------------------------------
    def cache_file(self) -> Optional[Path]:
        if not self.cfg.cache_path:
            return None
        base = Path(self.cfg.cache_path)
        if base.suffix == ".pkl":
            return base
        return base / f"resolution-{cache_key(self.cfg)}.pkl"

    @property
    def R(self) -> Resolution:
        if self._R is None:
            path = self.cache_file()
            if path is not None and path.exists():
                with open(path, "rb") as fh:
                    key, R = pickle.load(fh)
                if key != cache_key(self.cfg):
                    raise ValueError(f"cache {path} was built for a different configuration or data")
                self._R, self.cache_hit = R, True
                log.info("loaded resolution from %s", path)
            else:
                self._R = build_resolution(self.cfg)
                if path is not None:
                    path.parent.mkdir(parents=True, exist_ok=True)
                    with open(path, "wb") as fh:
                        pickle.dump((cache_key(self.cfg), self._R), fh)
                    log.info("wrote resolution cache %s", path)
        return self._R

    @property
    def reverse(self) -> bool:
        return self.cfg.solve_order == "reversed"

    @property
    def C(self) -> Cohomology:
        if self._C is None:
            self._C = Cohomology(self.R, self.reverse)
        return self._C

    @property
    def G(self) -> GeneratorTable:
        if self._G is None:
            self._G = GeneratorTable(self.C, self.cfg.data_file("generators.json"))
        return self._G

    @property
    def P(self) -> Polynomials:
        if self._P is None:
            self._P = Polynomials(self.G)
        return self._P

    @property
    def B(self) -> Brackets:
        if self._B is None:
            self._B = Brackets(self.G, self.P, self.reverse)
        return self._B

    def perturbed(self) -> "Session":
        """The same configuration with the reversed pivot order for every solve."""
        other = Session(replace(self.cfg, solve_order="reversed", sign_variant=self.cfg.sign_variant))
        other._R = self.R          # the resolution itself does not depend on the solve order
        return other
