"""MIMO-OFDM jamming and spatial-nulling simulator."""

from ._ofdmjam import (
    ConfigError,
    DimensionError,
    FramingError,
    IllPosedError,
    IoError,
    OfdmConfig,
    Scenario,
    add_cyclic_prefix,
    build_effective_channel,
    build_jb_prefix,
    build_toeplitz_jb,
    dft,
    extract_effective_input,
    format_ber_csv,
    fraction_study,
    idft,
    numerical_rank,
    qpsk_demap,
    qpsk_map,
    rank_study,
    run_block,
    strip_and_window,
    sweep,
    zf_detect,
)

__all__ = [name for name in dir() if not name.startswith("_")]
