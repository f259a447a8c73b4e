"""Scenario tree: base x population x aerosol x CO2-remainder variant."""

from dataclasses import dataclass
from enum import Enum


class Base(str, Enum):
    BASELINE = "baseline"
    PERMAFROST = "permafrost"
    DICE = "dice"


class Population(str, Enum):
    NORM = "norm"
    HIGH = "high"


class Aerosol(str, Enum):
    STANDARD = "standard"
    SAEROSOL = "saerosol"


class CO2Variant(str, Enum):
    LOW = "low"
    CENTRAL = "central"
    HIGH = "high"


@dataclass(frozen=True)
class ScenarioSpec:
    base: Base
    population: Population = Population.NORM
    aerosol: Aerosol = Aerosol.STANDARD
    co2_variant: CO2Variant = CO2Variant.CENTRAL

    def __post_init__(self):
        # accept plain strings too
        for name, cls in (("base", Base), ("population", Population),
                          ("aerosol", Aerosol), ("co2_variant", CO2Variant)):
            object.__setattr__(self, name, cls(getattr(self, name)))
        if self.base is Base.DICE and self.population is not Population.NORM:
            raise ValueError("the DICE-assumptions base only runs with normal population")
        if self.aerosol is Aerosol.SAEROSOL and self.population is not Population.NORM:
            raise ValueError("sulfate-aerosol drop is only defined for normal population")

    @property
    def family_id(self):
        """Identifier without the CO2 variant; the gas/heat run is shared by all three."""
        parts = [self.base.value, self.population.value]
        if self.aerosol is Aerosol.SAEROSOL:
            parts.append(self.aerosol.value)
        return "-".join(parts)

    @property
    def id(self):
        return f"{self.family_id}-{self.co2_variant.value}"

    def with_variant(self, variant):
        return ScenarioSpec(self.base, self.population, self.aerosol, CO2Variant(variant))


_FAMILIES = (
    (Base.BASELINE, Population.NORM, Aerosol.STANDARD),
    (Base.BASELINE, Population.HIGH, Aerosol.STANDARD),
    (Base.BASELINE, Population.NORM, Aerosol.SAEROSOL),
    (Base.PERMAFROST, Population.NORM, Aerosol.STANDARD),
    (Base.PERMAFROST, Population.HIGH, Aerosol.STANDARD),
    (Base.PERMAFROST, Population.NORM, Aerosol.SAEROSOL),
    (Base.DICE, Population.NORM, Aerosol.STANDARD),
)


def enumerate_scenarios():
    """18 primary specs followed by the 3 DICE variants."""
    return [ScenarioSpec(b, p, a, v) for b, p, a in _FAMILIES for v in CO2Variant]


def families():
    """Distinct gas/heat runs (one per family, CO2 variant left at central)."""
    return [ScenarioSpec(b, p, a) for b, p, a in _FAMILIES]


def parse_scenario(text, variant=None):
    """Resolve a kebab-case id. A family id plus an explicit variant is also accepted."""
    text = text.strip().lower()
    by_id = {s.id: s for s in enumerate_scenarios()}
    if text in by_id:
        spec = by_id[text]
        return spec.with_variant(variant) if variant else spec
    by_family = {s.family_id: s for s in families()}
    if text in by_family:
        return by_family[text].with_variant(variant or CO2Variant.CENTRAL)
    raise KeyError(text)


def valid_ids():
    return sorted({s.family_id for s in families()} | {s.id for s in enumerate_scenarios()})
