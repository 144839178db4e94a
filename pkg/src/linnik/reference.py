"""Published Monte Carlo summaries (m = 2000 replicates) used as reproduction targets.

Keys are (alpha, gamma); values are indexed by n in (100, 1000, 10000).
"""

SIZES = (100, 1000, 10000)

# (mean, MAD) per n
TABLE1_ALPHA = {
    (0.1, 0.05): ((0.101, 0.009), (0.100, 0.003), (0.100, 0.001)),
    (0.2, 0.5): ((0.202, 0.017), (0.200, 0.006), (0.200, 0.002)),
    (0.5, 1000.0): ((0.507, 0.047), (0.501, 0.014), (0.500, 0.004)),
    (0.8, 100.0): ((0.811, 0.082), (0.801, 0.026), (0.800, 0.008)),
    (1.0, 0.2): ((1.018, 0.107), (1.001, 0.035), (1.000, 0.010)),
    (1.2, 10.0): ((1.234, 0.146), (1.202, 0.045), (1.200, 0.014)),
    (1.75, 1.0): ((1.845, 0.317), (1.760, 0.096), (1.750, 0.031)),
    (2.0, 0.1): ((2.170, 0.429), (2.014, 0.130), (2.000, 0.042)),
}
TABLE1_GAMMA = {
    (0.1, 0.05): ((0.250, 0.071), (0.058, 0.027), (0.051, 0.009)),
    (0.2, 0.5): ((0.736, 0.400), (0.518, 0.141), (0.502, 0.048)),
    (0.5, 1000.0): ((1056.029, 344.901), (1007.287, 116.633), (1000.422, 35.313)),
    (0.8, 100.0): ((103.865, 24.042), (100.382, 7.803), (100.021, 2.455)),
    (1.0, 0.2): ((0.203, 0.039), (0.200, 0.012), (0.200, 0.004)),
    (1.2, 10.0): ((10.162, 1.757), (10.023, 0.581), (9.997, 0.179)),
    (1.75, 1.0): ((1.011, 0.142), (1.000, 0.041), (1.000, 0.013)),
    (2.0, 0.1): ((0.101, 0.012), (0.100, 0.004), (0.100, 0.001)),
}

# averaged 95% interval bounds per n
TABLE2_ALPHA = {
    (0.1, 0.05): ((0.083, 0.118), (0.095, 0.105), (0.098, 0.101)),
    (0.2, 0.5): ((0.167, 0.239), (0.189, 0.211), (0.196, 0.203)),
    (0.5, 1000.0): ((0.411, 0.596), (0.471, 0.529), (0.491, 0.509)),
    (0.8, 100.0): ((0.649, 0.974), (0.750, 0.851), (0.785, 0.816)),
    (1.0, 0.2): ((0.796, 1.247), (0.932, 1.068), (0.978, 1.021)),
    (1.2, 10.0): ((0.920, 1.529), (1.111, 1.293), (1.171, 1.228)),
    (1.75, 1.0): ((1.083, 4.003), (1.563, 1.949), (1.691, 1.811)),
    (2.0, 0.1): ((0.925, 3.448), (1.748, 2.282), (1.920, 2.085)),
}
TABLE2_GAMMA = {
    (0.1, 0.05): ((-0.733, 1.297), (-0.008, 0.127), (0.033, 0.068)),
    (0.2, 0.5): ((-0.588, 2.086), (0.213, 0.830), (0.412, 0.591)),
    (0.5, 1000.0): ((290.060, 1844.721), (772.112, 1237.549), (926.761, 1073.340)),
    (0.8, 100.0): ((54.162, 152.626), (85.195, 115.581), (95.334, 104.913)),
    (1.0, 0.2): ((0.124, 0.285), (0.175, 0.225), (0.192, 0.208)),
    (1.2, 10.0): ((6.644, 13.594), (8.916, 11.101), (9.654, 10.344)),
    (1.75, 1.0): ((0.733, 1.268), (0.915, 1.085), (0.973, 1.026)),
    (2.0, 0.1): ((0.076, 0.126), (0.092, 0.108), (0.098, 0.102)),
}

# coverage of the 95% intervals per n
TABLE3_ALPHA = {
    (0.1, 0.05): (0.954, 0.948, 0.949),
    (0.2, 0.5): (0.945, 0.943, 0.954),
    (0.5, 1000.0): (0.959, 0.952, 0.948),
    (0.8, 100.0): (0.961, 0.956, 0.951),
    (1.0, 0.2): (0.953, 0.949, 0.955),
    (1.2, 10.0): (0.958, 0.942, 0.943),
    (1.75, 1.0): (0.942, 0.956, 0.955),
    (2.0, 0.1): (0.940, 0.959, 0.947),
}
TABLE3_GAMMA = {
    (0.1, 0.05): (0.803, 0.914, 0.947),
    (0.2, 0.5): (0.859, 0.944, 0.955),
    (0.5, 1000.0): (0.933, 0.945, 0.946),
    (0.8, 100.0): (0.944, 0.945, 0.946),
    (1.0, 0.2): (0.949, 0.938, 0.948),
    (1.2, 10.0): (0.943, 0.949, 0.946),
    (1.75, 1.0): (0.951, 0.946, 0.953),
    (2.0, 0.1): (0.946, 0.949, 0.943),
}
TABLE3_AVERAGE_ALPHA = (0.951, 0.950, 0.950)
TABLE3_AVERAGE_GAMMA = (0.916, 0.941, 0.948)

# Method comparison: per (alpha, gamma) and n,
# ((mean MoM, FracMoment, CharFn), (CV% ...)) for alpha, then the same for gamma.
TABLE4_ALPHA = {
    (1.1, 0.9): {100: ((1.125, 1.328, 1.632), (11.82, 10.18, 22.91)),
                 1000: ((1.104, 1.228, 1.290), (3.64, 6.34, 22.33)),
                 10000: ((1.100, 1.180, 1.126), (1.16, 4.37, 9.57))},
    (1.3, 2.0): {100: ((1.341, 1.468, 1.699), (13.99, 10.78, 18.92)),
                 1000: ((1.301, 1.374, 1.468), (4.14, 6.62, 16.57)),
                 10000: ((1.300, 1.338, 1.334), (1.29, 4.39, 8.33))},
    (1.5, 1.0): {100: ((1.555, 1.617, 1.896), (16.00, 10.12, 11.17)),
                 1000: ((1.504, 1.547, 1.759), (4.72, 5.97, 12.64)),
                 10000: ((1.500, 1.514, 1.603), (1.51, 3.74, 11.6))},
    (1.7, 10.0): {100: ((1.791, 1.779, 1.836), (20.36, 8.43, 8.85)),
                  1000: ((1.707, 1.721, 1.752), (5.52, 5.09, 7.30)),
                  10000: ((1.701, 1.705, 1.710), (1.70, 2.79, 3.70))},
    (1.99, 0.1): {100: ((2.129, 2.010, 2.000), (26.85, 5.52, 0.00)),
                  1000: ((1.998, 1.990, 1.999), (6.78, 2.01, 0.13)),
                  10000: ((1.991, 1.990, 1.999), (2.06, 0.67, 0.93))},
}
TABLE4_GAMMA = {
    (1.1, 0.9): {100: ((0.919, 1.142, 1.927), (18.81, 40.11, 40.18)),
                 1000: ((0.900, 1.037, 1.285), (5.89, 8.74, 44.05)),
                 10000: ((0.900, 0.993, 0.960), (1.87, 9.57, 22.63))},
    (1.3, 2.0): {100: ((2.038, 2.223, 2.861), (16.94, 17.13, 29.61)),
                 1000: ((2.002, 2.103, 2.382), (5.16, 6.14, 24.99)),
                 10000: ((2.000, 2.054, 2.077), (1.62, 4.22, 13.15))},
    (1.5, 1.0): {100: ((1.013, 1.049, 1.574), (15.45, 14.38, 27.23)),
                 1000: ((1.001, 1.018, 1.401), (4.81, 5.31, 24.01)),
                 10000: ((1.000, 1.006, 1.164), (1.51, 3.07, 24.14))},
    (1.7, 10.0): {100: ((10.127, 10.240, 10.077), (14.61, 13.04, 13.91)),
                  1000: ((10.005, 10.045, 9.997), (4.52, 4.59, 4.51)),
                  10000: ((9.995, 10.005, 9.995), (1.38, 2.04, 1.41))},
    (1.99, 0.1): {100: ((0.101, 0.101, 0.100), (12.56, 11.11, 11.89)),
                  1000: ((0.100, 0.100, 0.102), (4.15, 3.64, 12.05)),
                  10000: ((0.100, 0.100, 0.101), (1.29, 1.15, 3.82))},
}

# Coverage of the MoM intervals at (alpha, gamma) = (0.4, 0.5), n = 100, m = 10000.
SPOT_CHECK = {"params": (0.4, 0.5), "n": 100, "m": 10000, "coverage": (0.951, 0.917)}
