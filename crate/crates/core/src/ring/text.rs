//! Canonical text descriptors: `gf(9;x^2+1)`, `truncpoly(gf(2),r=3)`,
//! `zmod(2^3)`, `witt2(gf(4;x^2+x+1))`.

use super::{prime_power, GaloisField, LocalRing, Poly, RingError};

fn err(s: &str) -> RingError {
    RingError::Parse(s.to_string())
}

/// Split `name(args)` into `(name, args)`.
fn call(s: &str) -> Option<(&str, &str)> {
    let s = s.trim();
    let open = s.find('(')?;
    if !s.ends_with(')') {
        return None;
    }
    Some((s[..open].trim(), &s[open + 1..s.len() - 1]))
}

/// Split at the last top-level comma.
fn split_last_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut at = None;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => at = Some(i),
            _ => {}
        }
    }
    at.map(|i| (&s[..i], &s[i + 1..]))
}

fn parse_u64(s: &str) -> Result<u64, RingError> {
    s.trim().parse().map_err(|_| err(s))
}

/// `p^r` or a plain prime power.
fn parse_prime_power(s: &str) -> Result<(u64, u32), RingError> {
    if let Some((b, e)) = s.split_once('^') {
        let p = parse_u64(b)?;
        let r = parse_u64(e)? as u32;
        if !super::is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok((p, r))
    } else {
        let n = parse_u64(s)?;
        prime_power(n).ok_or(RingError::NotPrimePower(n))
    }
}

/// Polynomial in `x` with integer coefficients, e.g. `x^2+x+1`, `x^3+2x+1`.
fn parse_poly(s: &str, p: u32) -> Result<Poly, RingError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coeffs: Vec<i64> = Vec::new();
    let normalized = compact.replace('-', "+-");
    for term in normalized.split('+').filter(|t| !t.is_empty()) {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, term),
        };
        let (c, deg) = if let Some(xpos) = body.find('x') {
            let cstr = body[..xpos].trim_end_matches('*');
            let c = if cstr.is_empty() { 1 } else { parse_u64(cstr)? as i64 };
            let rest = &body[xpos + 1..];
            let deg = if rest.is_empty() {
                1
            } else {
                parse_u64(rest.strip_prefix('^').ok_or_else(|| err(s))?)? as usize
            };
            (c, deg)
        } else {
            (parse_u64(body)? as i64, 0)
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += sign * c;
    }
    let mut coeffs: Vec<u32> = coeffs.iter().map(|c| c.rem_euclid(p as i64) as u32).collect();
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Err(err(s));
    }
    Ok(Poly { coeffs })
}

/// Parse `gf(q)` or `gf(q;modulus)`.
pub fn parse_field(s: &str) -> Result<GaloisField, RingError> {
    let (name, args) = call(s).ok_or_else(|| err(s))?;
    if name != "gf" {
        return Err(err(s));
    }
    match args.split_once(';') {
        None => {
            let (p, f) = parse_prime_power(args)?;
            GaloisField::new(p as u32, f)
        }
        Some((order, modulus)) => {
            let (p, f) = parse_prime_power(order)?;
            let m = parse_poly(modulus, p as u32)?;
            if m.degree() as u32 != f {
                return Err(RingError::Parse(format!("modulus {m} does not have degree {f}")));
            }
            GaloisField::with_modulus(p as u32, m)
        }
    }
}

/// Parse any ring descriptor. A bare field descriptor yields the field as a
/// length-one ring.
pub fn parse_ring(s: &str) -> Result<LocalRing, RingError> {
    let (name, args) = call(s).ok_or_else(|| err(s))?;
    match name {
        "gf" => Ok(LocalRing::field(parse_field(s)?)),
        "zmod" => {
            let (p, r) = parse_prime_power(args)?;
            LocalRing::integers_mod(p as u32, r)
        }
        "witt2" => LocalRing::witt2(parse_field(args)?),
        "truncpoly" => {
            let (field, r) = split_last_comma(args).ok_or_else(|| err(s))?;
            let r = r.trim();
            let r = r.strip_prefix("r=").unwrap_or(r);
            LocalRing::truncated_poly(parse_field(field)?, parse_u64(r)? as u32)
        }
        _ => Err(err(s)),
    }
}
