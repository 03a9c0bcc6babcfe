"""Graph-based transform (GT) audio coding with DCT and Walsh-Hadamard baselines."""

__version__ = "0.1.0"

from .audio_io import Signal, read_wav, write_wav
from .bench import BenchRow, GridConfig, emit_csv, run_grid, synthesize_corpus
from .codec import (
    CodecConfig,
    CompressedStream,
    SparseCoefficients,
    compress_signal,
    decode_stream,
    decompress_signal,
    densify,
    encode_stream,
    frame_signal,
    keep_top_k,
)
from .estimators import BlockTransform, SparseTransformCoder
from .graph import build_adjacency_gt1, build_adjacency_gt2, degree_of, laplacian_of
from .metrics import energy_retained, mse, psnr
from .spectral import EigenBasis, eigendecompose, normalize_basis
from .transforms import (
    ALL_KINDS,
    OrthonormalBasis,
    TransformKind,
    basis_for,
    forward,
    fwht_fast,
    inverse,
)
