import numpy as np
import pytest

from wordspace.errors import ConfigError
from wordspace.model import CBOW, SKIP_GRAM, TrainingConfig, init_model
from wordspace.vocab import Vocabulary


def _vocab(n=3):
    return Vocabulary.from_pairs((f"w{i}", n - i) for i in range(n))


class TestTrainingConfig:
    def test_objective_required(self):
        with pytest.raises(ConfigError, match="objective"):
            TrainingConfig(hs=False, negative=0)

    def test_arch_specific_alpha_defaults(self):
        assert TrainingConfig(architecture=SKIP_GRAM).alpha0 == 0.025
        assert TrainingConfig(architecture=CBOW).alpha0 == 0.05

    def test_min_alpha_default(self):
        cfg = TrainingConfig()
        assert cfg.min_alpha == pytest.approx(cfg.alpha0 * 1e-4)

    @pytest.mark.parametrize("kwargs", [
        dict(dim=0), dict(window=0), dict(sample=1.0), dict(sample=-0.1),
        dict(epochs=0), dict(negative=-1), dict(threads=0), dict(min_count=0),
        dict(alpha0=0.01, min_alpha=0.02), dict(architecture="glove"),
    ])
    def test_invalid_configs_rejected(self, kwargs):
        with pytest.raises(ConfigError):
            TrainingConfig(**kwargs)

    def test_summary_mentions_objectives(self):
        assert "hs" in TrainingConfig(hs=True).summary()
        assert "neg5" in TrainingConfig(hs=False, negative=5).summary()


class TestInitModel:
    def test_deterministic_for_seed(self):
        cfg = TrainingConfig(dim=8, seed=42)
        a = init_model(_vocab(5), cfg)
        b = init_model(_vocab(5), cfg)
        assert np.array_equal(a.input_vectors, b.input_vectors)

    def test_different_seeds_differ(self):
        a = init_model(_vocab(5), TrainingConfig(dim=8, seed=1))
        b = init_model(_vocab(5), TrainingConfig(dim=8, seed=2))
        assert not np.array_equal(a.input_vectors, b.input_vectors)

    def test_init_bound_scales_with_dim(self):
        m = init_model(_vocab(10), TrainingConfig(dim=100, seed=3))
        assert float(np.abs(m.input_vectors).max()) <= 0.005

    def test_shapes(self):
        m = init_model(_vocab(3), TrainingConfig(dim=2, seed=1))
        assert m.input_vectors.size == 6
        assert m.hs_weights.size == 4  # (V-1) x dim
        assert m.ns_weights is None

    def test_ns_weights_zero_initialized(self):
        m = init_model(_vocab(4), TrainingConfig(dim=3, hs=False, negative=2, seed=1))
        assert m.hs_weights is None
        assert m.ns_weights.shape == (4, 3)
        assert not m.ns_weights.any()

    def test_negative_sampling_needs_two_words(self):
        with pytest.raises(ConfigError):
            init_model(_vocab(1), TrainingConfig(hs=False, negative=5))

    def test_unit_vectors_cached_and_normalized(self):
        m = init_model(_vocab(6), TrainingConfig(dim=5, seed=9))
        u = m.unit_vectors()
        assert u is m.unit_vectors()
        assert np.allclose(np.linalg.norm(u, axis=1), 1.0)
        m.invalidate_cache()
        assert u is not m.unit_vectors()
