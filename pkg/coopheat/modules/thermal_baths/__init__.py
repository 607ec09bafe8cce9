"""
Banhos térmicos: espectros, ocupação de Planck e taxas por banda lateral
"""

from .spectra import (
    BATH_LABELS,
    planck_occupation,
    FlatSpectrum,
    SeparatedSpectrum,
    TabulatedSpectrum,
    SpectralModel,
    BathSpec,
    bath_spectrum,
    SidebandChannel,
    SidebandRates,
    sideband_rates,
)

__all__ = [
    "BATH_LABELS",
    "planck_occupation",
    "FlatSpectrum",
    "SeparatedSpectrum",
    "TabulatedSpectrum",
    "SpectralModel",
    "BathSpec",
    "bath_spectrum",
    "SidebandChannel",
    "SidebandRates",
    "sideband_rates",
]
