"""Self-fixtures: values computed once, frozen to a JSON store, and checked
on later runs. Floats are stored as hex strings so files round-trip bit-exactly."""
import json
import os
from pathlib import Path


class FixtureMissing(KeyError):
    pass


class FixtureDrift(AssertionError):
    pass


def _encode(value):
    if isinstance(value, bool):
        raise TypeError("booleans are not fixture values")
    if isinstance(value, int):
        return {"int": value}
    if isinstance(value, float):
        return {"float": value.hex()}
    if isinstance(value, complex):
        return {"complex": [value.real.hex(), value.imag.hex()]}
    if hasattr(value, "item"):  # numpy scalar
        return _encode(value.item())
    if isinstance(value, (list, tuple)):
        return {"list": [_encode(v) for v in value]}
    raise TypeError(f"unsupported fixture value {value!r}")


def _decode(obj):
    if "int" in obj:
        return obj["int"]
    if "float" in obj:
        return float.fromhex(obj["float"])
    if "complex" in obj:
        re, im = obj["complex"]
        return complex(float.fromhex(re), float.fromhex(im))
    return [_decode(v) for v in obj["list"]]


def _distance(a, b):
    if isinstance(a, list):
        if not isinstance(b, (list, tuple)) or len(a) != len(b):
            return float("inf")
        return max((_distance(x, y) for x, y in zip(a, b)), default=0.0)
    return abs(complex(a) - complex(b))


class FixtureStore:
    def __init__(self, path):
        self.path = Path(path)

    def load(self):
        if not self.path.exists():
            return {}
        with open(self.path) as fh:
            return json.load(fh)

    def _save(self, data):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(".tmp")
        with open(tmp, "w") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, self.path)

    def names(self):
        return sorted(self.load())

    def get(self, name):
        data = self.load()
        if name not in data:
            raise FixtureMissing(name)
        return _decode(data[name])

    def freeze(self, name, value, overwrite=False):
        data = self.load()
        if name in data and not overwrite:
            return _decode(data[name])
        data[name] = _encode(value)
        self._save(data)
        return value

    def check(self, name, value, tol):
        stored = self.get(name)
        delta = _distance(stored, value if not hasattr(value, "item") else value.item())
        if not delta <= tol:
            raise FixtureDrift(f"fixture {name!r} drifted: stored={stored!r} got={value!r} "
                               f"|delta|={delta:.3e} > tol={tol:.1e}")
        return True


def freeze_fixture(store, name, value):
    """Record ``value`` under ``name`` unless already present; returns the stored value."""
    return store.freeze(name, value)


def check_fixture(store, name, value, tol):
    """True if ``value`` matches the stored fixture within tol; raises
    FixtureDrift (showing both values) otherwise and FixtureMissing if absent."""
    return store.check(name, value, tol)


def builtin_fixtures():
    """Derived reference values tracked by ``lacsphere fixtures``: name -> thunk."""
    import numpy as np

    from ..expsum import KloostermanParams, kloosterman_bruteforce, singular_series_partial
    from ..lattice import make_lacunary
    from ..multiplier import error_sup_sample, surface_ft
    from ..operators import GridFunction, dyadic_error_sup, max_weak_type_ratio

    def weak():
        pts = np.random.default_rng(7).integers(-8, 9, size=(24, 4))
        return max_weak_type_ratio(np.unique(pts, axis=0), make_lacunary(4, 1, 4))

    return {
        "K_d4_lam1_q3_l0": lambda: kloosterman_bruteforce(KloostermanParams(4, 1, 3)).real,
        "K_d5_lam7_q8_l10000": lambda: kloosterman_bruteforce(KloostermanParams(5, 7, 8, (1, 0, 0, 0, 0))).real,
        "K_d4_lam6_q9_l12345": lambda: kloosterman_bruteforce(KloostermanParams(4, 6, 9, (1, 2, 3, 4))).real,
        "singular_series_d4_lam5_q10": lambda: singular_series_partial(4, 5, 10),
        "surface_ft_d4_lam4": lambda: float(surface_ft(4, 4, np.array([0.3, 0.1, 0.0, 0.2]))),
        "error_sup_d4_lam7": lambda: error_sup_sample(4, 7),
        "dyadic_error_sup_d4_lam15": lambda: dyadic_error_sup(GridFunction.delta(4), make_lacunary(4, 1, 5), 15)[0],
        "weak_type_max_ratio_d4": weak,
    }
