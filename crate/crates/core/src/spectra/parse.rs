//! Text grammar for spectra and coefficient lists.
//!
//! * 1-D: `-3..3` (inclusive range) or `-5,-2,2,5`
//! * n-D: `(-1,0);(1,0);(0,0)` or the box sugar `(-1,-1)..(1,1)`
//! * complex: `0, 1, 1i, 2+3i, -i, 6.283185307i`
//!
//! Positions in errors are 0-based character offsets into the input. The
//! Unicode minus sign `−` is accepted wherever `-` is.

use num_complex::Complex64;

use super::{ComplexSpectrum, Spectrum1D, SpectrumError, SpectrumND};

fn normalize(input: &str) -> Vec<char> {
    input
        .chars()
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect()
}

fn err(position: usize, message: impl Into<String>) -> SpectrumError {
    SpectrumError::Parse {
        position,
        message: message.into(),
    }
}

/// Splits `chars[start..end]` on `sep`, yielding trimmed pieces with the
/// offset of their first character.
fn split_trimmed(chars: &[char], start: usize, end: usize, sep: char) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut piece_start = start;
    for i in start..=end {
        if i == end || chars[i] == sep {
            let raw = &chars[piece_start..i];
            let lead = raw.iter().take_while(|c| c.is_whitespace()).count();
            let text: String = raw.iter().collect::<String>().trim().to_string();
            out.push((piece_start + lead, text));
            piece_start = i + 1;
        }
    }
    out
}

fn parse_int(text: &str, position: usize) -> Result<i64, SpectrumError> {
    if text.is_empty() {
        return Err(err(position, "expected an integer"));
    }
    text.parse::<i64>()
        .map_err(|_| err(position, format!("invalid integer '{text}'")))
}

fn find_range_op(chars: &[char]) -> Option<usize> {
    chars.windows(2).position(|w| w == ['.', '.'])
}

/// Parses a 1-D integer spectrum.
pub fn parse_spectrum_1d(input: &str) -> Result<Spectrum1D, SpectrumError> {
    let chars = normalize(input);
    if let Some(op) = find_range_op(&chars) {
        let lo = split_trimmed(&chars, 0, op, ',');
        let hi = split_trimmed(&chars, op + 2, chars.len(), ',');
        if lo.len() != 1 || hi.len() != 1 {
            return Err(err(op, "a range takes exactly two bounds"));
        }
        let a = parse_int(&lo[0].1, lo[0].0)?;
        let b = parse_int(&hi[0].1, hi[0].0)?;
        if a > b {
            return Err(err(op, format!("empty range {a}..{b}")));
        }
        return Spectrum1D::range(a, b);
    }
    let points = split_trimmed(&chars, 0, chars.len(), ',')
        .into_iter()
        .map(|(pos, t)| parse_int(&t, pos))
        .collect::<Result<Vec<_>, _>>()?;
    Spectrum1D::new(points)
}

fn parse_vector(chars: &[char], start: usize, end: usize) -> Result<Vec<i64>, SpectrumError> {
    let text: String = chars[start..end].iter().collect();
    let lead = text.len() - text.trim_start().len();
    let trimmed = text.trim();
    let open = start + lead;
    if !trimmed.starts_with('(') {
        return Err(err(open, "expected '('"));
    }
    if !trimmed.ends_with(')') {
        return Err(err(open + trimmed.chars().count().saturating_sub(1), "expected ')'"));
    }
    let inner_end = open + trimmed.chars().count() - 1;
    split_trimmed(chars, open + 1, inner_end, ',')
        .into_iter()
        .map(|(pos, t)| parse_int(&t, pos))
        .collect()
}

/// Parses an n-D lattice spectrum.
pub fn parse_spectrum_nd(input: &str) -> Result<SpectrumND, SpectrumError> {
    let chars = normalize(input);
    if let Some(op) = find_range_op(&chars) {
        let lo = parse_vector(&chars, 0, op)?;
        let hi = parse_vector(&chars, op + 2, chars.len())?;
        if lo.len() != hi.len() {
            return Err(err(op, "box corners differ in dimension"));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(err(op, "empty box"));
        }
        return SpectrumND::integer_box(&lo, &hi);
    }
    let mut points = Vec::new();
    for (pos, piece) in split_trimmed(&chars, 0, chars.len(), ';') {
        if piece.is_empty() {
            return Err(err(pos, "expected a vector"));
        }
        let end = pos + piece.chars().count();
        points.push(parse_vector(&chars, pos, end)?);
    }
    SpectrumND::new(points)
}

fn parse_real(text: &str, position: usize) -> Result<f64, SpectrumError> {
    let v: f64 = text
        .parse()
        .map_err(|_| err(position, format!("invalid number '{text}'")))?;
    if !v.is_finite() {
        return Err(err(position, "number must be finite"));
    }
    Ok(v)
}

fn parse_complex(text: &str, position: usize) -> Result<Complex64, SpectrumError> {
    if text.is_empty() {
        return Err(err(position, "expected a complex number"));
    }
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = compact.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(parse_real(&compact, position)?, 0.0));
    };
    // the split point is the last sign that does not belong to an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_text, im_text) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_text.is_empty() {
        0.0
    } else {
        parse_real(re_text, position)?
    };
    let im = match im_text {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => parse_real(t, position)?,
    };
    Ok(Complex64::new(re, im))
}

/// Parses a comma-separated list of complex numbers.
pub fn parse_complex_list(input: &str) -> Result<Vec<Complex64>, SpectrumError> {
    let chars = normalize(input);
    split_trimmed(&chars, 0, chars.len(), ',')
        .into_iter()
        .map(|(pos, t)| parse_complex(&t, pos))
        .collect()
}

/// Parses a comma-separated list of reals.
pub fn parse_real_list(input: &str) -> Result<Vec<f64>, SpectrumError> {
    let chars = normalize(input);
    split_trimmed(&chars, 0, chars.len(), ',')
        .into_iter()
        .map(|(pos, t)| {
            if t.is_empty() {
                Err(err(pos, "expected a number"))
            } else {
                parse_real(&t, pos)
            }
        })
        .collect()
}

impl std::str::FromStr for Spectrum1D {
    type Err = SpectrumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spectrum_1d(s)
    }
}

impl std::str::FromStr for SpectrumND {
    type Err = SpectrumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spectrum_nd(s)
    }
}

impl std::str::FromStr for ComplexSpectrum {
    type Err = SpectrumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ComplexSpectrum::new(parse_complex_list(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional() {
        assert_eq!(parse_spectrum_1d("-3..3").unwrap().points(), &[-3, -2, -1, 0, 1, 2, 3]);
        assert_eq!(parse_spectrum_1d("−5, −2, 2, 5").unwrap().points(), &[-5, -2, 2, 5]);
        assert_eq!(parse_spectrum_1d("0").unwrap().points(), &[0]);
    }

    #[test]
    fn one_dimensional_errors_carry_position() {
        assert_eq!(
            parse_spectrum_1d("1, 2, x3"),
            Err(SpectrumError::Parse {
                position: 6,
                message: "invalid integer 'x3'".into()
            })
        );
        assert!(matches!(
            parse_spectrum_1d("1,,2"),
            Err(SpectrumError::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_spectrum_1d("3..-3"),
            Err(SpectrumError::Parse { position: 1, .. })
        ));
    }

    #[test]
    fn lattice() {
        let s = parse_spectrum_nd("(−1,0);(1,0);(0,0)").unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.len(), 3);
        let b = parse_spectrum_nd("(-1,-1)..(1,1)").unwrap();
        assert_eq!(b.len(), 9);
        assert!(b.is_centrally_symmetric());
        assert!(matches!(
            parse_spectrum_nd("(1,0);(1,a)"),
            Err(SpectrumError::Parse { position: 9, .. })
        ));
        assert!(matches!(
            parse_spectrum_nd("(1,0);1,0)"),
            Err(SpectrumError::Parse { position: 6, .. })
        ));
    }

    #[test]
    fn complex_numbers() {
        let v = parse_complex_list("0, 1, 1i, 2+3i, -i, 1e-3-2.5e+1i, 6.283185307i").unwrap();
        let expect = [
            (0.0, 0.0),
            (1.0, 0.0),
            (0.0, 1.0),
            (2.0, 3.0),
            (0.0, -1.0),
            (1e-3, -25.0),
            (0.0, 6.283185307),
        ];
        for (z, (re, im)) in v.iter().zip(expect) {
            assert_eq!(z.re, re);
            assert_eq!(z.im, im);
        }
        assert!(matches!(
            parse_complex_list("1, 2+xi"),
            Err(SpectrumError::Parse { position: 3, .. })
        ));
    }

    #[test]
    fn reals() {
        assert_eq!(parse_real_list("-1, 1").unwrap(), vec![-1.0, 1.0]);
        assert!(parse_real_list("1, nan").is_err());
    }
}
