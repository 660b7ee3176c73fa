import numpy as np
import pytest


@pytest.fixture(scope="session")
def natural_images():
    """Five real photographs bundled with scikit-image, scaled to [0, 1]."""
    from skimage import data

    imgs = [data.camera(), data.coins(), data.moon(), data.page(), data.text()]
    return [img.astype(np.float64) / 255.0 for img in imgs]
