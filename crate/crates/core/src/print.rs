//! Shared helpers for canonical text rendering.

use std::fmt;

use crate::scalar::Scalar;

fn is_negative(c: &Scalar) -> bool {
    !c.is_compound() && c.to_string().starts_with('-')
}

fn write_term(f: &mut fmt::Formatter<'_>, c: &Scalar, body: &str, unit: bool) -> fmt::Result {
    if unit {
        return if c.is_compound() { write!(f, "({c})") } else { write!(f, "{c}") };
    }
    if c.is_one() {
        f.write_str(body)
    } else if *c == Scalar::from_int(-1) {
        write!(f, "-{body}")
    } else if c.is_compound() {
        write!(f, "({c}) * {body}")
    } else {
        write!(f, "{c} * {body}")
    }
}

/// Writes `Σ c·body` with `" - "` for negative leading signs; empty sums print `0`.
pub(crate) fn write_sum<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Scalar, String, bool)>,
{
    let mut first = true;
    for (c, body, unit) in terms {
        if first {
            write_term(f, c, &body, unit)?;
            first = false;
        } else if is_negative(c) {
            f.write_str(" - ")?;
            write_term(f, &-c, &body, unit)?;
        } else {
            f.write_str(" + ")?;
            write_term(f, c, &body, unit)?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
