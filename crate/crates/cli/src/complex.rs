//! Command-line complex-number syntax: "a+bi" with optional signs and
//! pure-imaginary shorthand ("0.8", "-1.2i", "0.5+0.3i", "i"). Ambiguous or
//! malformed input errors early with the offending position.

use gcs_core::C64;

pub fn parse_complex(input: &str) -> Result<C64, String> {
    let s = input.trim();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    // find the sign that separates real and imaginary parts: a '+'/'-' past
    // position 0 not immediately preceded by an exponent marker
    let bytes = s.as_bytes();
    let mut split = None;
    for (i, &b) in bytes.iter().enumerate().skip(1) {
        if (b == b'+' || b == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            if let Some(first) = split {
                return Err(format!(
                    "unexpected second sign at position {i} (first split at {first}) in '{s}'"
                ));
            }
            split = Some(i);
        }
    }
    match split {
        Some(i) => {
            let re = parse_real(&s[..i], 0, s)?;
            let imag_part = &s[i..];
            let im = parse_imag(imag_part, i, s)?;
            Ok(C64::new(re, im))
        }
        None => {
            if s.ends_with('i') || s.ends_with('I') {
                Ok(C64::new(0.0, parse_imag(s, 0, s)?))
            } else {
                Ok(C64::new(parse_real(s, 0, s)?, 0.0))
            }
        }
    }
}

fn parse_real(part: &str, offset: usize, whole: &str) -> Result<f64, String> {
    if part.contains('i') || part.contains('I') {
        return Err(format!(
            "real part '{part}' at position {offset} of '{whole}' contains 'i'"
        ));
    }
    part.parse::<f64>()
        .map_err(|_| format!("cannot parse real part '{part}' at position {offset} of '{whole}'"))
}

fn parse_imag(part: &str, offset: usize, whole: &str) -> Result<f64, String> {
    let stripped = part
        .strip_suffix('i')
        .or_else(|| part.strip_suffix('I'))
        .ok_or_else(|| {
            format!(
                "expected 'i' suffix on imaginary part at position {} of '{whole}'",
                offset + part.len()
            )
        })?;
    match stripped {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        other => other.parse::<f64>().map_err(|_| {
            format!("cannot parse imaginary part '{other}' at position {offset} of '{whole}'")
        }),
    }
}

pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}
