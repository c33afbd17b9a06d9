use std::fmt::Write;

/// `x` with ten significant digits; exponent form outside `[1e-5, 1e10)`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // round first so the exponent accounts for carries (0.99999999999 -> 1)
    let x: f64 = format!("{x:.9e}")
        .parse()
        .expect("float formatting round-trips");
    let mag = x.abs().log10().floor() as i32;
    if !(-5..10).contains(&mag) {
        return format!("{x:.9e}");
    }
    let decimals = (9 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn nums(xs: &[f64]) -> String {
    let mut s = String::from("[");
    for (k, x) in xs.iter().enumerate() {
        if k > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{}", num(*x));
    }
    s.push(']');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(num(-0.0893733003), "-0.08937330030");
        assert_eq!(num(1.0), "1.000000000");
        assert_eq!(num(0.350457), "0.3504570000");
        assert_eq!(num(123.456), "123.4560000");
        assert_eq!(num(9.99999999999), "10.00000000");
        assert_eq!(num(0.9999999999999997), "1.000000000");
        assert_eq!(num(0.0), "0");
        assert_eq!(num(1e-7), "1.000000000e-7");
        assert_eq!(nums(&[0.5, -2.0]), "[0.5000000000, -2.000000000]");
    }
}
