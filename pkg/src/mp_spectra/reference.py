"""Reference generalized eigenvalues for ``REFERENCE_PARAMS`` at three basis sizes.

Values are stored exactly as published (ten decimals), ascending.
"""

REFERENCE_EIGENVALUES = {
    10: (
        -0.3182625110,
        -0.2704316853,
        -0.2034360814,
        -0.1066454946,
        0.0377168281,
        0.2632400773,
        0.6407379301,
        1.3431303711,
        2.9008353557,
        7.8219861758,
    ),
    20: (
        -0.3539806785,
        -0.3377886422,
        -0.3181879752,
        -0.2940367086,
        -0.2641948959,
        -0.2272618962,
        -0.1813997506,
        -0.1241121585,
        -0.0519168187,
        0.0401731042,
        0.1595076545,
        0.3172869557,
        0.5312685097,
        0.8309994740,
        1.2686957529,
        1.9440545704,
        3.0681761380,
        5.1586932727,
        9.8117373105,
        24.6289177244,
    ),
    50: (
        -0.3737970285,
        -0.3697824370,
        -0.3654326406,
        -0.3605803981,
        -0.3551371874,
        -0.3490336853,
        -0.3422055319,
        -0.3345878470,
        -0.3261122685,
        -0.3167048558,
        -0.3062842782,
        -0.2947600362,
        -0.2820305748,
        -0.2679811864,
        -0.2524816114,
        -0.2353832386,
        -0.2165157939,
        -0.1956833791,
        -0.1726596925,
        -0.1471822153,
        -0.1189450864,
        -0.0875903080,
        -0.0526968083,
        -0.0137667391,
        0.0297918277,
        0.0786869331,
        0.1337710351,
        0.1960777130,
        0.2668697536,
        0.3477028418,
        0.4405109317,
        0.5477221710,
        0.6724185590,
        0.8185592905,
        0.9912985971,
        1.1974467752,
        1.4461532792,
        1.7499433240,
        2.1263340792,
        2.6004336118,
        3.2092718167,
        4.0093243214,
        5.0902438596,
        6.6014543295,
        8.8075665036,
        12.2150693720,
        17.8995854711,
        28.5079491893,
        52.2371825915,
        128.3492106634,
    ),
}
