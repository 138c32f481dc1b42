"""Core signal processing at 16 kHz: streaming STFT/ISTFT, quality metrics,
vector similarity and colored-noise generation.

Signals are numpy float64 arrays. Binaural buffers are planar ``(2, n)``
arrays with channel 0 = left, channel 1 = right. Spectral frames are
complex arrays of length ``fft_len // 2 + 1`` (97 for the default config).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, MetricDomainError, SizeMismatchError

SAMPLE_RATE = 16000

#: Hard cap applied to SNR-style metrics instead of returning +/- infinity.
SNR_CAP_DB = 60.0


@dataclass(frozen=True)
class AudioParams:
    """Framing parameters of the streaming pipeline.

    The defaults give 8 ms chunks with 4 ms lookahead: 192-sample analysis
    window (12 ms), 128-sample hop, 97 frequency bins.
    """

    sample_rate: int = SAMPLE_RATE
    chunk_len: int = 128
    lookahead_len: int = 64
    fft_len: int = 192
    win_len: int = 192
    hop_len: int = 128

    def __post_init__(self):
        if self.sample_rate != SAMPLE_RATE:
            raise ConfigError(f"only {SAMPLE_RATE} Hz is supported, got {self.sample_rate}")
        if self.hop_len != self.chunk_len:
            raise ConfigError("hop_len must equal chunk_len")
        if self.win_len != self.fft_len:
            raise ConfigError("win_len must equal fft_len")
        if self.lookahead_len != self.win_len - self.hop_len:
            raise ConfigError("lookahead_len must equal win_len - hop_len")
        if self.lookahead_len <= 0:
            raise ConfigError("window must be longer than the hop")

    @property
    def freq_bins(self) -> int:
        return self.fft_len // 2 + 1

    @property
    def chunk_ms(self) -> float:
        return 1000.0 * self.chunk_len / self.sample_rate

    @property
    def lookahead_ms(self) -> float:
        return 1000.0 * self.lookahead_len / self.sample_rate


def analysis_window(params: AudioParams) -> np.ndarray:
    """Square-root periodic Hann window, used for analysis and synthesis."""
    n = np.arange(params.win_len)
    hann = 0.5 - 0.5 * np.cos(2.0 * np.pi * n / params.win_len)
    return np.sqrt(hann)


def ola_envelope(params: AudioParams, window: np.ndarray | None = None) -> np.ndarray:
    """Steady-state overlap-add envelope over one hop.

    Entry ``r`` is the sum of squared window values landing on offset ``r``
    of an emitted hop: the current frame contributes ``w^2[r]`` and, where
    the previous frame still overlaps (``r < win - hop``), ``w^2[r + hop]``.
    Strictly positive for the sqrt-Hann window at this overlap, so dividing
    by it is always safe.
    """
    w = analysis_window(params) if window is None else np.asarray(window, dtype=np.float64)
    sq = w * w
    env = sq[: params.hop_len].copy()
    overlap = params.win_len - params.hop_len
    env[:overlap] += sq[params.hop_len :]
    return env


class StftStream:
    """Streaming analysis: one spectral frame per pushed hop-length chunk.

    The stream keeps the trailing ``win - hop`` input samples so each frame
    is computed over ``[cached tail ++ new chunk]`` without recomputing past
    frames. The tail starts as zeros; ``prime()`` can seed it with real
    samples before the first push.
    """

    def __init__(self, params: AudioParams, window: np.ndarray | None = None):
        self.params = params
        self._window = analysis_window(params) if window is None else np.asarray(window, dtype=np.float64)
        if self._window.shape != (params.win_len,):
            raise SizeMismatchError(f"window must have {params.win_len} samples")
        self._tail = np.zeros(params.win_len - params.hop_len)
        self._pushed = 0

    def prime(self, samples: np.ndarray) -> None:
        """Seed the tail with real input, before any chunk has been pushed."""
        samples = np.asarray(samples, dtype=np.float64)
        if samples.shape != self._tail.shape:
            raise SizeMismatchError(f"priming needs {self._tail.shape[0]} samples, got {samples.shape}")
        if self._pushed:
            raise ConfigError("cannot prime a stream that has already consumed chunks")
        self._tail = samples.copy()

    def push(self, chunk: np.ndarray) -> np.ndarray:
        """Consume one chunk and return the newest spectral frame."""
        chunk = np.asarray(chunk, dtype=np.float64)
        if chunk.shape != (self.params.hop_len,):
            raise SizeMismatchError(f"chunk must have {self.params.hop_len} samples, got {chunk.shape}")
        frame = np.concatenate([self._tail, chunk])
        self._tail = frame[self.params.hop_len :].copy()
        self._pushed += 1
        return np.fft.rfft(frame * self._window, n=self.params.fft_len)

    def reset(self) -> None:
        self._tail = np.zeros(self.params.win_len - self.params.hop_len)
        self._pushed = 0


class IstftStream:
    """Streaming synthesis: emits the hop-length region that is final.

    Each popped frame is synthesized, windowed and overlap-added onto the
    retained tail; only the leading hop is emitted because the trailing
    ``win - hop`` samples will still receive contributions from the next
    frame. Emitted samples are normalized by the steady-state envelope and
    are never revised afterwards.
    """

    def __init__(self, params: AudioParams, window: np.ndarray | None = None):
        self.params = params
        self._window = analysis_window(params) if window is None else np.asarray(window, dtype=np.float64)
        self._env = ola_envelope(params, self._window)
        self._tail = np.zeros(params.win_len - params.hop_len)

    def pop(self, frame: np.ndarray) -> np.ndarray:
        frame = np.asarray(frame)
        if frame.shape != (self.params.freq_bins,):
            raise SizeMismatchError(f"frame must have {self.params.freq_bins} bins, got {frame.shape}")
        synth = np.fft.irfft(frame, n=self.params.fft_len) * self._window
        out = synth[: self.params.hop_len].copy()
        overlap = self.params.win_len - self.params.hop_len
        out[:overlap] += self._tail
        self._tail = synth[self.params.hop_len :].copy()
        return out / self._env

    def reset(self) -> None:
        self._tail = np.zeros(self.params.win_len - self.params.hop_len)


def stft_frames(x: np.ndarray, params: AudioParams, window: np.ndarray | None = None) -> np.ndarray:
    """Offline STFT with valid framing: frame k covers ``x[k*hop : k*hop+win]``.

    Returns a ``(frames, bins)`` complex array. Feeding ``zeros(win-hop) ++ x``
    reproduces what a fresh :class:`StftStream` sees chunk by chunk.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] < params.win_len:
        raise SizeMismatchError(f"signal must be 1-D with at least {params.win_len} samples")
    w = analysis_window(params) if window is None else np.asarray(window, dtype=np.float64)
    n_frames = 1 + (x.shape[0] - params.win_len) // params.hop_len
    windows = np.lib.stride_tricks.sliding_window_view(x, params.win_len)[:: params.hop_len][:n_frames]
    return np.fft.rfft(windows * w, n=params.fft_len, axis=1)


def istft_overlap_add(frames: np.ndarray, params: AudioParams, window: np.ndarray | None = None) -> np.ndarray:
    """Offline inverse of :func:`stft_frames` under streaming semantics.

    Emits ``frames * hop`` samples: the final tail that a streaming pop would
    withhold is dropped, and every sample is normalized by the same
    steady-state envelope the streaming path uses.
    """
    frames = np.asarray(frames)
    if frames.ndim != 2 or frames.shape[1] != params.freq_bins:
        raise SizeMismatchError(f"frames must be (n, {params.freq_bins})")
    w = analysis_window(params) if window is None else np.asarray(window, dtype=np.float64)
    k = frames.shape[0]
    buf = np.zeros((k - 1) * params.hop_len + params.win_len)
    synth = np.fft.irfft(frames, n=params.fft_len, axis=1) * w
    for i in range(k):
        buf[i * params.hop_len : i * params.hop_len + params.win_len] += synth[i]
    out = buf[: k * params.hop_len]
    return out / np.tile(ola_envelope(params, w), k)


def _as_signal_pair(estimate, reference):
    est = np.asarray(estimate, dtype=np.float64)
    ref = np.asarray(reference, dtype=np.float64)
    if est.shape != ref.shape or est.ndim != 1 or est.shape[0] < 1:
        raise SizeMismatchError(f"signals must be equal-length 1-D arrays, got {est.shape} vs {ref.shape}")
    return est, ref


def si_snr(estimate, reference, zero_mean: bool = True, cap_db: float = SNR_CAP_DB) -> float:
    """Scale-invariant SNR in dB.

    The estimate is projected onto the reference; the ratio of projected
    ("target") to residual ("noise") energy is returned, clamped to
    ``[-cap_db, cap_db]`` so perfect or all-noise estimates stay finite.
    Both signals are mean-removed first unless ``zero_mean`` is False.
    """
    est, ref = _as_signal_pair(estimate, reference)
    if zero_mean:
        est = est - est.mean()
        ref = ref - ref.mean()
    ref_energy = float(np.dot(ref, ref))
    if ref_energy == 0.0:
        raise MetricDomainError("reference signal has zero energy")
    scale = float(np.dot(est, ref)) / ref_energy
    target = scale * ref
    noise = est - target
    p_target = float(np.dot(target, target))
    p_noise = float(np.dot(noise, noise))
    if p_target == 0.0:
        return -cap_db
    if p_noise == 0.0:
        return cap_db
    return float(np.clip(10.0 * np.log10(p_target / p_noise), -cap_db, cap_db))


def snr(estimate, reference, cap_db: float = SNR_CAP_DB) -> float:
    """Plain SNR in dB: reference energy over residual energy, clamped."""
    est, ref = _as_signal_pair(estimate, reference)
    ref_energy = float(np.dot(ref, ref))
    if ref_energy == 0.0:
        raise MetricDomainError("reference signal has zero energy")
    residual = ref - est
    p_res = float(np.dot(residual, residual))
    if p_res == 0.0:
        return cap_db
    return float(np.clip(10.0 * np.log10(ref_energy / p_res), -cap_db, cap_db))


def si_snr_improvement(estimate, mixture_channel, reference) -> float:
    """SI-SNR of the estimate minus SI-SNR of the unprocessed mixture."""
    return si_snr(estimate, reference) - si_snr(mixture_channel, reference)


def cosine_similarity(a, b) -> float:
    """Cosine of the angle between two vectors, clipped to [-1, 1]."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise SizeMismatchError(f"vectors must be equal-length 1-D arrays, got {a.shape} vs {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise MetricDomainError("cosine similarity undefined for zero vectors")
    return float(np.clip(np.dot(a, b) / (na * nb), -1.0, 1.0))


_NOISE_EXPONENTS = {"white": 0.0, "pink": 1.0, "brown": 2.0}


def colored_noise(kind: str, n: int, seed) -> np.ndarray:
    """Gaussian noise with a power-law spectrum, zero mean and unit sample std.

    ``kind`` selects the PSD shape: white (flat), pink (1/f) or brown
    (1/f^2), produced by shaping white Gaussian noise in the rFFT domain.
    ``seed`` may be an int or a numpy Generator; the output is a pure
    function of it.
    """
    if kind not in _NOISE_EXPONENTS:
        raise ConfigError(f"unknown noise kind {kind!r}, expected one of {sorted(_NOISE_EXPONENTS)}")
    if n < 1:
        raise SizeMismatchError("noise length must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    x = rng.standard_normal(n)
    beta = _NOISE_EXPONENTS[kind]
    if beta != 0.0 and n > 1:
        spec = np.fft.rfft(x)
        freqs = np.fft.rfftfreq(n)
        freqs[0] = freqs[1]  # keep DC finite
        spec *= freqs ** (-beta / 2.0)
        x = np.fft.irfft(spec, n=n)
    x = x - x.mean()
    std = x.std()
    if std > 0.0:
        x = x / std
    return x
