import pytest

from skintrack import (
    TrainConfig,
    bundled_skin_samples,
    generate_negatives,
    init_mlp,
    interleave_classes,
    train,
)

# Frozen reference configuration: weight seed, derived negatives seed
# (seed + 1, as the CLI does), interleaved 8 positives + 42 negatives.
REFERENCE_SEED = 108
NEGATIVES_SEED = 109

# Non-skin backdrop used by synthetic scenes; far from every palette
# colour (Chebyshev >= 28) and rejected by the reference network.
BACKGROUND = (70, 70, 70)


def reference_training_set():
    positives = bundled_skin_samples()
    negatives = generate_negatives(positives, 42, NEGATIVES_SEED)
    return interleave_classes(positives, negatives)


@pytest.fixture(scope="session")
def training_result():
    net, history = train(init_mlp(REFERENCE_SEED), reference_training_set(), TrainConfig())
    return net, history


@pytest.fixture(scope="session")
def trained_net(training_result):
    return training_result[0]
