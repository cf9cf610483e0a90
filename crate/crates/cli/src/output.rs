use std::io::Write;

use rug::float::Round;
use rug::ops::Pow;
use rug::{Complex, Float};
use serde::Serialize;

/// One output row. Absent fields serialize as empty CSV cells / JSON nulls.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Record {
    pub command: &'static str,
    pub lambda: String,
    pub kind: Option<&'static str>,
    pub m: Option<i64>,
    pub n: Option<usize>,
    #[serde(rename = "D")]
    pub dimension: Option<usize>,
    pub d: Option<i64>,
    pub re: Option<String>,
    pub im: Option<String>,
    pub delta: Option<String>,
    pub status: String,
}

impl Record {
    pub fn new(command: &'static str, lambda: String) -> Self {
        Self {
            command,
            lambda,
            kind: None,
            m: None,
            n: None,
            dimension: None,
            d: None,
            re: None,
            im: None,
            delta: None,
            status: "ok".into(),
        }
    }

    /// Components smaller than `10^-digits·|z|` are below the output
    /// resolution and print as 0.
    pub fn value(mut self, z: &Complex, digits: u32) -> Self {
        let prec = z.prec().0.max(z.prec().1);
        let floor = Float::with_val(prec, z.abs_ref()) * Float::with_val(prec, 10).pow(-(digits as i32));
        let part = |x: &Float| {
            if Float::with_val(prec, x.abs_ref()) < floor {
                "0".to_string()
            } else {
                fixed(x, digits)
            }
        };
        self.re = Some(part(z.real()));
        self.im = Some(part(z.imag()));
        self
    }

    pub fn failed(&self) -> bool {
        FAILURES.contains(&self.status.as_str())
    }

    fn sort_key(&self) -> (u8, Option<i64>, Option<usize>, Option<usize>) {
        let kind = match self.kind {
            Some("barrier") => 0,
            Some("bound") => 1,
            Some("well") => 2,
            _ => 3,
        };
        (kind, self.m, self.n, self.dimension)
    }
}

/// Status values that make the run exit with code 2.
pub const FAILURES: [&str; 5] = ["no-convergence", "divergence", "breakdown", "continuation-break", "error"];

pub fn status_of(error: &expores::Error) -> &'static str {
    use expores::Error::*;
    match error {
        NoConvergence { .. } => "no-convergence",
        Divergence { .. } => "divergence",
        RecursionBreakdown { .. } => "breakdown",
        ContinuationBreak { .. } => "continuation-break",
        _ => "error",
    }
}

/// Stable sort by (kind, m, n, D); generation order breaks ties.
pub fn sort_records(records: &mut [Record]) {
    records.sort_by_key(Record::sort_key);
}

/// `x` to `digits` significant digits in positional notation, rounded to
/// nearest with ties to even.
pub fn fixed(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x.is_sign_negative() { "-inf".into() } else { "inf".into() };
    }
    let (negative, mantissa, exp) = x.to_sign_string_exp_round(10, Some(digits as usize), Round::Nearest);
    // value = 0.mantissa × 10^exp
    let exp = exp.unwrap_or(0);
    let len = mantissa.len() as i32;
    let body = if exp <= 0 {
        format!("0.{}{}", "0".repeat((-exp) as usize), mantissa)
    } else if exp >= len {
        format!("{}{}", mantissa, "0".repeat((exp - len) as usize))
    } else {
        let (int, frac) = mantissa.split_at(exp as usize);
        format!("{int}.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Shortest fixed form of a grid value: 15 significant digits, trailing
/// zeros dropped.
pub fn lambda_text(x: &Float) -> String {
    let s = fixed(x, 15);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn delta_text(delta: f64) -> String {
    if delta.is_infinite() {
        if delta > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{delta:.2}")
    }
}

pub fn write_csv<W: Write>(out: W, records: &[Record]) -> csv::Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    writer.write_record(["command", "lambda", "kind", "m", "n", "D", "d", "re", "im", "delta", "status"])?;
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Serialize)]
pub struct Meta {
    pub command: &'static str,
    pub output_digits: u32,
    pub working_digits: u32,
    pub orientation: &'static str,
    pub version: &'static str,
    pub elapsed_seconds: f64,
}

pub fn write_json<W: Write>(mut out: W, meta: &Meta, records: &[Record]) -> std::io::Result<()> {
    #[derive(Serialize)]
    struct Document<'a> {
        meta: &'a Meta,
        records: &'a [Record],
    }
    serde_json::to_writer_pretty(&mut out, &Document { meta, records })?;
    writeln!(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(x: &str) -> Float {
        Float::with_val(200, Float::parse(x).unwrap())
    }

    #[test]
    fn fixed_positional() {
        assert_eq!(fixed(&f("-1.7088894023335160"), 16), "-1.708889402333516");
        assert_eq!(fixed(&f("5.269711264e-7"), 4), "0.0000005270");
        assert_eq!(fixed(&f("24.095880341888706123"), 4), "24.10");
        assert_eq!(fixed(&f("12345"), 3), "12300");
        assert_eq!(fixed(&Float::new(53), 5), "0");
    }

    #[test]
    fn ties_go_to_even() {
        // 0.125 and 0.375 are exact in binary
        assert_eq!(fixed(&f("0.125"), 2), "0.12");
        assert_eq!(fixed(&f("0.375"), 2), "0.38");
    }

    #[test]
    fn lambda_trimmed() {
        assert_eq!(lambda_text(&f("0.5")), "0.5");
        assert_eq!(lambda_text(&f("10")), "10");
    }

    #[test]
    fn csv_header_and_empty_fields() {
        let mut r = Record::new("spectrum", "0.5".into());
        r.kind = Some("bound");
        r.n = Some(0);
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "command,lambda,kind,m,n,D,d,re,im,delta,status\nspectrum,0.5,bound,,0,,,,,,ok\n");
    }

    #[test]
    fn sort_is_stable() {
        let mk = |kind, m, lambda: &str| {
            let mut r = Record::new("spectrum", lambda.into());
            r.kind = Some(kind);
            r.m = m;
            r
        };
        let mut v = vec![mk("well", Some(2), "1"), mk("barrier", None, "1"), mk("well", Some(2), "0.5")];
        sort_records(&mut v);
        let order: Vec<_> = v.iter().map(|r| (r.kind.unwrap(), r.lambda.as_str())).collect();
        assert_eq!(order, [("barrier", "1"), ("well", "1"), ("well", "0.5")]);
    }
}
