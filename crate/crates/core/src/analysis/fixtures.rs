//! Reference polynomials: the Humbert-surface data for `D = 21` and
//! `D = 40`, the diagonal coefficients `q_D` in the coordinates `(g, h)`,
//! and the coefficients `p_D` in the coordinates `(m, n)`.

use crate::poly::{MultiPoly, VarList};

pub fn gh() -> VarList {
    VarList::new(&["g", "h"])
}

pub fn mn() -> VarList {
    VarList::new(&["m", "n"])
}

pub const LAMBDA_21: &str = "189*g^6 - 594*g^5*h + 621*g^4*h^2 - 216*g^3*h^3 - 378*g^4 + 1116*g^3*h \
     - 954*g^2*h^2 + 184*g*h^3 + 16*h^4 + 205*g^2 - 522*g*h + 349*h^2 - 16";

pub const Q_21: &str = "18*g^2 - 12*g*h - 12*h^2 - 14";

pub const LAMBDA_40: &str = "(g^2 - h^2 - 1)*(9*g^4 - 17*g^2*h^2 + 8*h^4 - 12*g^3 + 12*g*h^2 + 7*g^2 - 8*h^2 + 10*g + 2)";

/// Quadratic vanishing on the singular points of `λ₄₀`.
pub const Q_40_CANDIDATE: &str = "-15*g^2 + 14*h^2 + 10*g + 5";

/// Resultants of `λ₂₁` and `q₂₁`, in factored form.
pub const RES_G_21: &str = "746496*(27*h^2 - 1)^2*(3*h^4 + 27*h^2 - 25)^2";
pub const RES_H_21: &str = "64*(27*g^2 - 25)^2*(27*g^4 + 342*g^2 - 289)^2";

/// Singular points of `λ₄₀` as `(g-condition, h-condition)`.
pub const LAMBDA_40_SINGULAR: [(&str, &str); 3] = [("g - 8", "2*h^2 - 125"), ("g - 9", "h^2 - 80"), ("3*g + 1", "h")];

/// `q_D` in the factored shape it is usually written in.
pub const Q_TABLE: [(u32, &str); 14] = [
    (5, "-6*(10*g + 3)*(15*g + 2)"),
    (8, "4*g + 4*h - 7"),
    (12, "-(h - 1)*(3*h^3 + 9*h^2 - 27*g - 4*h - 8)"),
    (13, "-100*g^2 + 385*g*h - 48*h^2 + 194*g + 168*h - 108"),
    (17, "1"),
    (21, "18*g^2 - 12*g*h - 12*h^2 - 14"),
    (24, "12*g*h^2 - 3*g^2 - 2*h^2 + 3"),
    (28, "-2*(19*g^2 + 35*h^2 + 84*h + 28)"),
    (29, "-6*g^2 - 6*g*h + 65*g - 16*h^2 - 156*h + 4"),
    (33, "1"),
    (37, "g^2 + 15*g*h + 20*g - 27*h^2 + 2*h - 11"),
    (44, "(g*h + h - 1)*(5*g^3*h + 9*g^2*h + 6*g^2 - 4*g*h + 18*g - 8*h + 19)"),
    (53, "-(25*h^2 + 42*h + 24)*g^2 - (h + 1)^2*(26*h + 7)*g - 11*(h + 1)^4"),
    (61, "-3*(3*h^2 + 7*h - 1)*g^2 + 2*(9*h^3 + 12*h^2 - 10*h - 1)*g - 9*h^4 - 3*h^3 + 8*h^2 + 8*h - 20"),
];

/// `p_D` over the rational parametrisation `(m, n)`.
pub const P_TABLE: [(u32, &str); 5] = [
    (5, "m^2 - 5*n^2 - 5"),
    (8, "-(m + 1)"),
    (12, "-27*m^2 + n^2 + 27"),
    (13, "1803*m^2 - 72*m*n + n^2 + 3168*m - 1440*n - 768"),
    (17, "1"),
];

fn parse(s: &str, v: &VarList) -> MultiPoly {
    MultiPoly::parse(s, v).expect("valid fixture")
}

pub fn lambda21() -> MultiPoly {
    parse(LAMBDA_21, &gh())
}

pub fn q21() -> MultiPoly {
    parse(Q_21, &gh())
}

pub fn lambda40() -> MultiPoly {
    parse(LAMBDA_40, &gh())
}

pub fn q40_candidate() -> MultiPoly {
    parse(Q_40_CANDIDATE, &gh())
}

/// `q_D` for the given discriminant, expanded.
pub fn q_d(d: u32) -> Option<MultiPoly> {
    Q_TABLE.iter().find(|(k, _)| *k == d).map(|(_, s)| parse(s, &gh()))
}

/// `p_D` for the given discriminant, expanded.
pub fn p_d(d: u32) -> Option<MultiPoly> {
    P_TABLE.iter().find(|(k, _)| *k == d).map(|(_, s)| parse(s, &mn()))
}

/// All fixtures as `name<TAB>expression` lines, expanded.
pub fn dump() -> String {
    let mut out = String::new();
    let mut line = |name: String, p: MultiPoly| {
        out.push_str(&name);
        out.push('\t');
        out.push_str(&p.to_string());
        out.push('\n');
    };
    line("lambda21".into(), lambda21());
    line("q21".into(), q21());
    line("lambda40".into(), lambda40());
    line("q40_candidate".into(), q40_candidate());
    for (d, _) in Q_TABLE {
        line(format!("q{d}"), q_d(d).unwrap());
    }
    for (d, _) in P_TABLE {
        line(format!("p{d}"), p_d(d).unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_integrity() {
        assert_eq!(lambda21().num_terms(), 13);
        assert_eq!(lambda40().total_degree(), 6);
        for (d, s) in Q_TABLE {
            let p = q_d(d).unwrap();
            // printing and reparsing is the identity
            assert_eq!(MultiPoly::parse(&p.to_string(), &gh()).unwrap(), p, "q{d} from {s}");
        }
        assert_eq!(q_d(21).unwrap(), q21());
        assert_eq!(p_d(8).unwrap(), parse("-m - 1", &mn()));
        assert!(q_d(40).is_none());
        assert_eq!(dump().lines().count(), 4 + 14 + 5);
    }
}
