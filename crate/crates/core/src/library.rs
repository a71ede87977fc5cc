//! Builtin test functions and the descriptor mini-language.
//!
//! Descriptors are a name optionally followed by `:` and arguments:
//!
//! | descriptor                 | function on `[0,1]` unless noted |
//! |----------------------------|----------------------------------|
//! | `one`, `zero`, `const:c`   | constants                        |
//! | `x`, `x2`, `x3`, `pow:k`   | monomials `x^k`, `k ≥ 0`         |
//! | `sqrt`                     | `√x`                             |
//! | `abs:a`, `abshalf`         | `|x - a|`                        |
//! | `step`                     | `(1 + tanh((x - 1/2)/0.05)) / 2` |
//! | `sin2pi`                   | `sin 2πx`                        |
//! | `cos`, `sin`, `cos2`       | `cos x`, `sin x`, `cos 2x` on `[-π,π]`, periodic |
//! | `pp:B;C`                   | piecewise polynomial, see [`piecewise_polynomial`] |
//!
//! In `pp:B;C`, `B` lists interior breakpoints separated by `,` (possibly
//! empty) and `C` lists one coefficient group per piece, groups separated
//! by `|`, coefficients by `,`, lowest degree first.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::funcspace::{Domain, FunctionHandle};

/// Builtin names accepted by [`parse_function`] without arguments.
pub const BUILTIN_NAMES: [&str; 12] =
    ["one", "zero", "x", "x2", "x3", "sqrt", "abshalf", "step", "sin2pi", "cos", "sin", "cos2"];

pub fn monomial(k: f64) -> Result<FunctionHandle> {
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::InvalidFunction(format!("monomial exponent must be >= 0, got {k}")));
    }
    let name = match k {
        k if k == 1.0 => "x".to_string(),
        k if k == 2.0 => "x2".to_string(),
        k if k == 3.0 => "x3".to_string(),
        k => format!("pow:{k}"),
    };
    if k == 0.0 {
        return Ok(FunctionHandle::constant(Domain::Unit, 1.0).with_name(name));
    }
    let mut f = FunctionHandle::new(Domain::Unit, move |x| x.powf(k)).with_name(name);
    if k >= 1.0 {
        f = f.with_lipschitz(k).with_derivative(move |x| if k == 1.0 { 1.0 } else { k * x.powf(k - 1.0) });
    }
    Ok(f)
}

pub fn sqrt() -> FunctionHandle {
    FunctionHandle::new(Domain::Unit, f64::sqrt).with_name("sqrt")
}

/// `|x - a|`, with a breakpoint at `a`.
pub fn abs_shift(a: f64) -> FunctionHandle {
    let name = if a == 0.5 { "abshalf".to_string() } else { format!("abs:{a}") };
    FunctionHandle::new(Domain::Unit, move |x| (x - a).abs()).with_lipschitz(1.0).with_breakpoints(vec![a]).with_name(name)
}

const STEP_WIDTH: f64 = 0.05;

pub fn smoothed_step() -> FunctionHandle {
    FunctionHandle::new(Domain::Unit, |x| 0.5 * (1.0 + ((x - 0.5) / STEP_WIDTH).tanh()))
        .with_derivative(|x| {
            let c = ((x - 0.5) / STEP_WIDTH).cosh();
            0.5 / (STEP_WIDTH * c * c)
        })
        .with_lipschitz(0.5 / STEP_WIDTH)
        .with_name("step")
}

pub fn sin_2pi() -> FunctionHandle {
    FunctionHandle::new(Domain::Unit, |x| (2.0 * PI * x).sin())
        .with_derivative(|x| 2.0 * PI * (2.0 * PI * x).cos())
        .with_lipschitz(2.0 * PI)
        .with_name("sin2pi")
}

/// `cos(kx)` on the circle.
pub fn cos_k(k: u32) -> FunctionHandle {
    let kf = k as f64;
    FunctionHandle::new(Domain::Circle, move |x| (kf * x).cos())
        .with_derivative(move |x| -kf * (kf * x).sin())
        .with_lipschitz(kf)
        .periodic()
        .with_name(if k == 1 { "cos".to_string() } else { format!("cos{k}") })
}

/// `sin(kx)` on the circle.
pub fn sin_k(k: u32) -> FunctionHandle {
    let kf = k as f64;
    FunctionHandle::new(Domain::Circle, move |x| (kf * x).sin())
        .with_derivative(move |x| kf * (kf * x).cos())
        .with_lipschitz(kf)
        .periodic()
        .with_name(if k == 1 { "sin".to_string() } else { format!("sin{k}") })
}

fn poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn poly_derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(j, &a)| j as f64 * a).collect()
}

/// Piecewise polynomial on `[0,1]`: piece `i` is `Σ_j coeffs[i][j] x^j` on
/// `[b_{i-1}, b_i)` with `b_{-1} = 0`, the last piece closed at 1.
///
/// A Lipschitz constant is attached when the pieces join continuously, and
/// the derivative when their derivatives also join.
pub fn piecewise_polynomial(breaks: &[f64], coeffs: &[Vec<f64>]) -> Result<FunctionHandle> {
    if coeffs.len() != breaks.len() + 1 {
        return Err(Error::InvalidFunction(format!(
            "{} breakpoints need {} coefficient groups, got {}",
            breaks.len(),
            breaks.len() + 1,
            coeffs.len()
        )));
    }
    if breaks.iter().any(|b| !(*b > 0.0 && *b < 1.0)) || breaks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidFunction("breakpoints must be strictly increasing inside (0,1)".into()));
    }
    if coeffs.iter().any(|c| c.is_empty() || c.iter().any(|a| !a.is_finite())) {
        return Err(Error::InvalidFunction("every piece needs finite coefficients".into()));
    }
    let breaks = breaks.to_vec();
    let coeffs = coeffs.to_vec();
    let derivs: Vec<Vec<f64>> = coeffs.iter().map(|c| poly_derivative(c)).collect();
    let joins = |cs: &[Vec<f64>]| {
        breaks.iter().enumerate().all(|(i, &b)| {
            let (l, r) = (poly(&cs[i], b), poly(&cs[i + 1], b));
            (l - r).abs() <= 1e-12 * (1.0 + l.abs())
        })
    };
    let continuous = joins(&coeffs);
    let smooth = continuous && joins(&derivs);
    let piece = {
        let breaks = breaks.clone();
        move |x: f64| breaks.partition_point(|&b| b <= x)
    };
    let name = format!("pp[{} pieces]", coeffs.len());
    let (pc, cc) = (piece.clone(), coeffs.clone());
    let mut f = FunctionHandle::new(Domain::Unit, move |x| poly(&cc[pc(x)], x)).with_breakpoints(breaks).with_name(name);
    if continuous {
        // |p'| ≤ Σ j|c_j| on [0,1]
        let l = coeffs.iter().map(|c| c.iter().enumerate().map(|(j, a)| j as f64 * a.abs()).sum::<f64>()).fold(0.0, f64::max);
        f = f.with_lipschitz(l);
    }
    if smooth {
        f = f.with_derivative(move |x| poly(&derivs[piece(x)], x));
    }
    Ok(f)
}

fn parse_number(s: &str, what: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::InvalidFunction(format!("cannot parse {what} '{s}'")))
}

fn parse_list(s: &str, what: &str) -> Result<Vec<f64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| parse_number(t, what)).collect()
}

fn check_domain(f: FunctionHandle, domain: Domain, desc: &str) -> Result<FunctionHandle> {
    if f.domain() != domain {
        return Err(Error::DomainMismatch(format!("'{desc}' lives on {}, requested {domain}", f.domain())));
    }
    Ok(f)
}

/// Resolves a function descriptor; `domain` must match the builtin's own domain
/// except for constants, which exist on both.
pub fn parse_function(desc: &str, domain: Domain) -> Result<FunctionHandle> {
    let desc = desc.trim();
    let (head, arg) = match desc.split_once(':') {
        Some((h, a)) => (h.trim().to_ascii_lowercase(), Some(a)),
        None => (desc.to_ascii_lowercase(), None),
    };
    let f = match (head.as_str(), arg) {
        ("one", None) => FunctionHandle::constant(domain, 1.0).with_name("one"),
        ("zero", None) => FunctionHandle::constant(domain, 0.0).with_name("zero"),
        ("const", Some(c)) => {
            let c = parse_number(c, "constant")?;
            if !c.is_finite() {
                return Err(Error::InvalidFunction(format!("constant must be finite, got {c}")));
            }
            FunctionHandle::constant(domain, c).with_name(format!("const:{c}"))
        }
        ("x", None) => monomial(1.0)?,
        ("x2", None) => monomial(2.0)?,
        ("x3", None) => monomial(3.0)?,
        ("pow", Some(k)) => monomial(parse_number(k, "exponent")?)?,
        ("sqrt", None) => sqrt(),
        ("abshalf", None) => abs_shift(0.5),
        ("abs", Some(a)) => abs_shift(parse_number(a, "shift")?),
        ("step", None) => smoothed_step(),
        ("sin2pi", None) => sin_2pi(),
        ("cos", None) => cos_k(1),
        ("sin", None) => sin_k(1),
        ("cos2", None) => cos_k(2),
        ("pp", Some(body)) => {
            let (b, c) = body
                .split_once(';')
                .ok_or_else(|| Error::InvalidFunction(format!("piecewise descriptor needs 'breaks;coeffs', got '{body}'")))?;
            let breaks = parse_list(b, "breakpoint")?;
            let coeffs = c.split('|').map(|g| parse_list(g, "coefficient")).collect::<Result<Vec<_>>>()?;
            piecewise_polynomial(&breaks, &coeffs)?.with_name(desc.to_string())
        }
        _ => return Err(Error::InvalidFunction(format!("unknown function descriptor '{desc}'"))),
    };
    check_domain(f, domain, desc)
}

/// Like [`parse_function`], but takes the domain from the builtin itself
/// (`[-π,π]` for `cos`, `sin`, `cos2`; `[0,1]` otherwise).
pub fn parse_function_auto(desc: &str) -> Result<FunctionHandle> {
    let head = desc.trim().split(':').next().unwrap_or("").to_ascii_lowercase();
    let domain = if matches!(head.as_str(), "cos" | "sin" | "cos2") { Domain::Circle } else { Domain::Unit };
    parse_function(desc, domain)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse_and_validate() {
        for name in BUILTIN_NAMES {
            let f = parse_function_auto(name).unwrap();
            f.validate(257).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn values() {
        let f = parse_function("pow:2.5", Domain::Unit).unwrap();
        assert!((f.eval(0.25) - 0.25f64.powf(2.5)).abs() < 1e-15);
        assert!((parse_function("abs:0.2", Domain::Unit).unwrap().eval(0.7) - 0.5).abs() < 1e-15);
        assert_eq!(parse_function("const:-2", Domain::Circle).unwrap().eval(1.0), -2.0);
        assert!((parse_function_auto("cos2").unwrap().eval(PI / 2.0) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn lipschitz_constants_dominate_slopes() {
        for name in BUILTIN_NAMES {
            let f = parse_function_auto(name).unwrap();
            let Some(l) = f.lipschitz() else { continue };
            let pts = f.domain().probes(2001);
            for w in pts.windows(2) {
                let s = (f.eval(w[1]) - f.eval(w[0])).abs() / (w[1] - w[0]);
                assert!(s <= l * (1.0 + 1e-9), "{name}: slope {s} > {l}");
            }
        }
    }

    #[test]
    fn piecewise() {
        // x on [0,0.5), 1 - x on [0.5,1]
        let f = parse_function("pp:0.5;0,1|1,-1", Domain::Unit).unwrap();
        assert_eq!(f.eval(0.25), 0.25);
        assert_eq!(f.eval(0.75), 0.25);
        assert_eq!(f.lipschitz(), Some(1.0));
        assert!(!f.has_derivative());
        assert_eq!(f.breakpoints(), &[0.5]);
        // x² then 2x - 1: values 1/4 and 0 at x = 1/2
        let g = parse_function("pp:0.5;0,0,1|-1,2", Domain::Unit).unwrap();
        assert_eq!(g.lipschitz(), None);
        // x² and x - 1/4 join smoothly at 1/2
        let h = parse_function("pp:0.5;0,0,1|-0.25,1", Domain::Unit).unwrap();
        assert!(h.has_derivative());
        h.validate(101).unwrap();
        let single = parse_function("pp:;1,2,3", Domain::Unit).unwrap();
        assert_eq!(single.eval(1.0), 6.0);
    }

    #[test]
    fn rejects() {
        for bad in ["nope", "pow:-1", "pp:0.5;1", "pp:1.5;1|2", "cos", "const:abc", "x:3"] {
            assert!(parse_function(bad, Domain::Unit).is_err(), "{bad}");
        }
        assert!(parse_function("x", Domain::Circle).is_err());
    }
}
