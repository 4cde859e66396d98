"""Genus-5 Hessian at a vanishing theta null with its eigenvalues, entries rounded to 6 significant digits."""
import numpy as np

HESSIAN = np.array(
    [
        [-2.79665 + 5.29764j, -9.57825 - 9.04671j, 7.36305 + 2.28697j, 7.58338 + 5.34729j, 6.15667 - 1.90199j],
        [-9.57825 - 9.04671j, 18.9738 + 8.34582j, -23.1027 - 3.10545j, -9.31944 - 0.822821j, 0.524289 - 3.64991j],
        [7.36305 + 2.28697j, -23.1027 - 3.10545j, 16.8441 - 1.15986j, 13.9363 - 4.56541j, -3.32248 + 4.10698j],
        [7.58338 + 5.34729j, -9.31944 - 0.822821j, 13.9363 - 4.56541j, 2.89309 + 1.21773j, 3.86617 - 0.546202j],
        [6.15667 - 1.90199j, 0.524289 - 3.64991j, -3.32248 + 4.10698j, 3.86617 - 0.546202j, -12.9726 - 1.928j],
    ]
)

EIGENVALUES = [
    47.946229109152995 + 9.491932144035298j,
    -15.491689246713147 + 3.3401255907497958j,
    -9.512858919129267 - 1.0587349322052013j,
]

NULL_CHARACTERISTIC = ((1, 0, 0, 1, 0), (1, 0, 1, 1, 0))
