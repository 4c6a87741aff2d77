//! Fixed inputs shared by the benchmarks.

use sullivan_core::{parse_model, SullivanModel};

pub const EXAMPLE: &str = "\
even x1 : 6
even x2 : 8
odd y1 : 29 = x1^5 + x1*x2^3
odd y2 : 31 = x1^4*x2 + x2^4
odd y3 : 33 = x1^3*x2^2
";

pub fn example() -> SullivanModel {
    parse_model(EXAMPLE).expect("valid model")
}

pub fn projective_space(n: u32) -> SullivanModel {
    parse_model(&format!("even x : 2\nodd y : {} = x^{}\n", 2 * n + 1, n + 1)).expect("valid model")
}

/// Three even generators in degree 2 with a cubic regular sequence and two
/// extra odd generators.
pub fn cubic() -> SullivanModel {
    parse_model(
        "even a : 2\neven b : 2\neven c : 2\n\
         odd y1 : 5 = a^3 + b*c^2\nodd y2 : 5 = b^3 - a*b*c\nodd y3 : 5 = c^3 + a^2*b\n\
         odd y4 : 5 = a*b*c\nodd y5 : 5 = a^2*c - b^2*c\n",
    )
    .expect("valid model")
}
