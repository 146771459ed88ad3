"""Run configuration: validation, JSON round-trip, and content hashing."""

import hashlib
import json
from dataclasses import asdict, dataclass, field, replace

from movewin.physics import INITIAL_DATA, POTENTIALS
from movewin.window import WindowPolicy


@dataclass(frozen=True)
class SimConfig:
    d: int = 1
    L0: float = 20.0
    N0: int = 256
    tau: float = 1e-3
    T: float = 1.0
    potential_id: str = "zero"
    initial_id: str = "free-gaussian"
    plateau_a: float = 0.5
    window: WindowPolicy = field(default_factory=WindowPolicy)
    dealias: bool = True
    snapshot_every: int = 0  # steps between snapshots; 0 = first/last only
    out_dir: str = "out"
    seed: int | None = None  # synthetic tests only

    def validated(self):
        """Return self after checking all invariants; raise ValueError if bad."""
        if self.d not in (1, 2):
            raise ValueError(f"dimension must be 1 or 2, got {self.d}")
        if not self.L0 > 0:
            raise ValueError("half-width must be positive")
        if self.N0 < 4:
            raise ValueError(f"mode cutoff must be >= 4, got {self.N0}")
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if self.T < 0:
            raise ValueError("final time must be nonnegative")
        n = round(self.T / self.tau) if self.tau else 0
        if abs(n * self.tau - self.T) > 1e-9 * max(1.0, self.T):
            raise ValueError(
                f"T={self.T} is not an integer multiple of tau={self.tau}; "
                "partial final steps are rejected")
        if not 0.0 < self.plateau_a < 1.0:
            raise ValueError("plateau fraction must lie in (0,1)")
        if self.potential_id not in POTENTIALS:
            raise ValueError(f"unknown potential id {self.potential_id!r}")
        if self.initial_id not in INITIAL_DATA:
            raise ValueError(f"unknown initial-data id {self.initial_id!r}")
        pot_d = POTENTIALS[self.potential_id].d
        if pot_d not in (0, self.d):
            raise ValueError(f"potential {self.potential_id!r} is {pot_d}-D, "
                             f"run is {self.d}-D")
        if INITIAL_DATA[self.initial_id].d != self.d:
            raise ValueError(f"initial data {self.initial_id!r} is "
                             f"{INITIAL_DATA[self.initial_id].d}-D, run is {self.d}-D")
        if self.snapshot_every < 0:
            raise ValueError("snapshot_every must be >= 0")
        return self

    def to_dict(self):
        return asdict(self)

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        if "window" in data and isinstance(data["window"], dict):
            data["window"] = WindowPolicy(**data["window"])
        return cls(**data)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def content_hash(self):
        """Stable short hash of the configuration (output location excluded)."""
        payload = self.to_dict()
        payload.pop("out_dir")
        digest = hashlib.sha256(
            json.dumps(payload, sort_keys=True).encode()).hexdigest()
        return digest[:10]

    def run_id(self):
        return f"run-{self.content_hash()}"

    def with_overrides(self, **kw):
        window_kw = {k[7:]: kw.pop(k) for k in list(kw)
                     if k.startswith("window_")}
        cfg = replace(self, **kw)
        if window_kw:
            cfg = replace(cfg, window=replace(cfg.window, **window_kw))
        return cfg
