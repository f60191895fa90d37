"""
Numba compilation options
Shared option set for the cycle-loop kernels
"""


def kernel_opts():
    """Options for the sequential cycle kernels (MASH, DWA, DAC)"""
    return dict(
        cache=True,
        nogil=True,
        fastmath=False,  # integer paths must stay exact
        error_model="numpy",
    )
