import numpy as np
import pytest

from tileguard import Image, StructuringElement


@pytest.fixture
def rng():
    """Deterministic random number generator (seed=42)."""
    return np.random.RandomState(42)


@pytest.fixture
def se3():
    """3x3 solid square, center origin: the default probe."""
    return StructuringElement.square(3)


@pytest.fixture
def block_image():
    """7x7 binary image with a solid 3x3 foreground block at the center.

    The two-pixel margin keeps a 3x3-SE dilation of the block off the
    image border, so opening and closing act as identities on it.
    """
    pixels = np.zeros((7, 7))
    pixels[2:5, 2:5] = 1.0
    return Image(pixels)


@pytest.fixture
def single_pixel_image():
    """5x5 binary image with one foreground pixel at the center."""
    pixels = np.zeros((5, 5))
    pixels[2, 2] = 1.0
    return Image(pixels)
