//! Even-index Bernoulli numbers `B_2 .. B_60` as exact rationals.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use once_cell::sync::Lazy;

/// Largest supported correction depth (number of even Bernoulli numbers stored).
pub const MAX_TERMS: usize = 30;

/// `(numerator, denominator)` of `B_{2j}` for `j = 1..=30`.
pub const EVEN_BERNOULLI: [(&str, &str); MAX_TERMS] = [
    ("1", "6"),
    ("-1", "30"),
    ("1", "42"),
    ("-1", "30"),
    ("5", "66"),
    ("-691", "2730"),
    ("7", "6"),
    ("-3617", "510"),
    ("43867", "798"),
    ("-174611", "330"),
    ("854513", "138"),
    ("-236364091", "2730"),
    ("8553103", "6"),
    ("-23749461029", "870"),
    ("8615841276005", "14322"),
    ("-7709321041217", "510"),
    ("2577687858367", "6"),
    ("-26315271553053477373", "1919190"),
    ("2929993913841559", "6"),
    ("-261082718496449122051", "13530"),
    ("1520097643918070802691", "1806"),
    ("-27833269579301024235023", "690"),
    ("596451111593912163277961", "282"),
    ("-5609403368997817686249127547", "46410"),
    ("495057205241079648212477525", "66"),
    ("-801165718135489957347924991853", "1590"),
    ("29149963634884862421418123812691", "798"),
    ("-2479392929313226753685415739663229", "870"),
    ("84483613348880041862046775994036021", "354"),
    ("-1215233140483755572040304994079820246041491", "56786730"),
];

fn ratio(num: &str, den: &str) -> f64 {
    let n: BigInt = num.parse().expect("valid numerator");
    let d: BigInt = den.parse().expect("valid denominator");
    n.to_f64().expect("finite") / d.to_f64().expect("finite")
}

/// `B_{2j} / (2j)!` for `j = 1..=30` (index `j - 1`).
pub static EULER_MACLAURIN_WEIGHTS: Lazy<[f64; MAX_TERMS]> = Lazy::new(|| {
    let mut w = [0.0; MAX_TERMS];
    let mut fact = 1.0f64;
    for (j, (num, den)) in EVEN_BERNOULLI.iter().enumerate() {
        let m = 2 * (j + 1);
        fact *= ((m - 1) * m) as f64;
        w[j] = ratio(num, den) / fact;
    }
    w
});

/// `B_{2j}` rendered to double.
pub fn bernoulli_even(j: usize) -> Option<f64> {
    if j == 0 || j > MAX_TERMS {
        return None;
    }
    let (n, d) = EVEN_BERNOULLI[j - 1];
    Some(ratio(n, d))
}
