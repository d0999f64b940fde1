import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def _backends():
    from artinlab import _kernels_py

    mods = [_kernels_py]
    try:
        from artinlab import _kernels

        mods.append(_kernels)
    except ImportError:
        pass
    return mods


@pytest.fixture(params=_backends(), ids=lambda m: m.BACKEND_NAME)
def backend(request):
    return request.param
