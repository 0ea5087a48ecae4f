//! Reference values the self-check compares against.

/// `C(r)` for `r = 2..=15`.
pub const C_BURGESS: [(u32, &str); 14] = [
    (2, "10.0366"),
    (3, "4.9539"),
    (4, "3.6493"),
    (5, "3.0356"),
    (6, "2.6765"),
    (7, "2.4400"),
    (8, "2.2721"),
    (9, "2.1467"),
    (10, "2.0492"),
    (11, "1.9712"),
    (12, "1.9073"),
    (13, "1.8540"),
    (14, "1.8088"),
    (15, "1.7700"),
];

/// `D1(k)` for `k = 2..=15`.
pub const D1: [(u32, &str); 14] = [
    (2, "89.1550"),
    (3, "43.1104"),
    (4, "31.9985"),
    (5, "26.9751"),
    (6, "24.1129"),
    (7, "22.2635"),
    (8, "20.9692"),
    (9, "20.0133"),
    (10, "19.2768"),
    (11, "18.6920"),
    (12, "18.2160"),
    (13, "17.8211"),
    (14, "17.4877"),
    (15, "17.2028"),
];

/// `D2(k)` for `k = 2..=15`.
pub const D2: [(u32, &str); 14] = [
    (2, "13.5958"),
    (3, "6.6415"),
    (4, "5.0420"),
    (5, "4.3220"),
    (6, "3.9103"),
    (7, "3.6430"),
    (8, "3.4550"),
    (9, "3.3154"),
    (10, "3.2075"),
    (11, "3.1215"),
    (12, "3.0513"),
    (13, "2.9929"),
    (14, "2.9434"),
    (15, "2.9011"),
];

/// `E(k)` for `k = 2..=8`.
pub const E: [(u32, &str); 7] = [
    (2, "3.4936e3"),
    (3, "5.5369e3"),
    (4, "1.2215e4"),
    (5, "2.8503e4"),
    (6, "6.7566e4"),
    (7, "1.6095e5"),
    (8, "3.8375e5"),
];

/// Candidate conductors up to `10^4` for `l = 3` and `l = 5`.
pub const SURVIVORS_3: [u64; 19] = [
    7, 9, 13, 19, 31, 37, 43, 61, 67, 73, 103, 109, 127, 157, 277, 439, 643, 997, 1597,
];
pub const SURVIVORS_5: [u64; 9] = [11, 25, 31, 41, 61, 71, 151, 311, 431];
