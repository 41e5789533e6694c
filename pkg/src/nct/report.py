"""Measured space of an index next to its entropy yardsticks."""

from dataclasses import dataclass, field

from .small import SmallSigmaIndex


@dataclass
class SpaceReport:
    structure: str
    n: int
    sigma: int
    components: dict
    references: dict
    notes: list = field(default_factory=list)

    @property
    def total(self):
        return sum(self.components.values())

    @property
    def auxiliary(self):
        """Everything except the raw color string."""
        return self.total - self.components.get("colors.raw", 0)

    def lines(self):
        out = [f"structure {self.structure}", f"n {self.n}", f"sigma {self.sigma}"]
        out += [f"bits.{k} {v}" for k, v in self.components.items()]
        out += [f"bits.total {self.total}", f"bits.auxiliary {self.auxiliary}"]
        out += [f"ref.{k} {v:.3f}" for k, v in self.references.items()]
        out += [f"note {s}" for s in self.notes]
        return out

    def format(self):
        return "\n".join(self.lines()) + "\n"


def space_report(idx, ks=(1, 2)):
    """Per-component bits of ``idx`` plus ``n*H0``, ``n*Hk`` and ``2n``."""
    c = idx.colors
    n = idx.n
    refs = {"nH0": n * c.entropy_h0()}
    for k in ks:
        refs[f"nH{k}"] = n * c.entropy_hk(k)
    refs["2n"] = float(2 * n)
    small = isinstance(idx, SmallSigmaIndex)
    notes = ["colors are stored uncompressed with per-color occurrence lists"]
    if small:
        notes.append("mini_table keeps nearest nodes over the whole tree")
    else:
        notes.append("sampled_rmq core is a sparse table over block minima")
    return SpaceReport("small" if small else "large", n, idx.sigma,
                       dict(idx.space_bits()), refs, notes)
