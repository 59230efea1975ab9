use std::fmt::Write as _;

use num_complex::Complex64;
use serde_json::Value;

use crate::membership::BoundaryCurve;

/// Significant digits of every number written by the CLI.
pub const SIG_DIGITS: usize = 9;

/// `x` with [`SIG_DIGITS`] significant digits, trailing zeros removed.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..9).contains(&mag) {
        let decimals = (SIG_DIGITS as i32 - 1 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        format!("{:.*e}", SIG_DIGITS - 1, x)
    }
}

/// Round every float in a JSON tree to [`SIG_DIGITS`] significant digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            sig(x).parse::<f64>().ok().and_then(serde_json::Number::from_f64).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

/// Rows of already-formatted cells under a header.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner().map_err(|e| e.into_error().into())
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(sig).unwrap_or_default()
}

const VIEW: f64 = 800.0;
/// Plotted window of the `w`-plane: real part range, then half-height.
const RE_RANGE: (f64, f64) = (-1.0, 5.0);
const IM_HALF: f64 = 3.0;
/// Vertices beyond this modulus are left out of the drawn path.
const DRAW_LIMIT: f64 = 1e3;

/// The boundary of `q_α(𝔻)` on a fixed 800×800 canvas, real axis horizontal,
/// with the leftmost point `A = q_α(-1)` marked.
pub fn boundary_svg(curve: &BoundaryCurve, alpha_label: &str) -> String {
    let scale = VIEW / (RE_RANGE.1 - RE_RANGE.0);
    let x = |re: f64| (re - RE_RANGE.0) * scale;
    let y = |im: f64| (IM_HALF - im) * scale;
    let (cs, ce) = curve.cap_range;
    let path = |pts: &[Complex64]| {
        pts.iter()
            .filter(|w| w.norm() < DRAW_LIMIT)
            .map(|w| format!("{},{}", sig(x(w.re)), sig(y(w.im))))
            .collect::<Vec<_>>()
            .join(" ")
    };
    // Draw the upper arc first, then the lower one, so each is a simple polyline.
    let lower = path(&curve.vertices[..cs]);
    let upper = path(&curve.vertices[ce..]);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="800" viewBox="0 0 800 800">"#
    );
    let _ = writeln!(s, r#"<rect width="800" height="800" fill="white"/>"#);
    let _ = writeln!(s, r##"<g stroke="#999" stroke-width="1">"##);
    let _ = writeln!(s, r#"<line x1="0" y1="{0}" x2="800" y2="{0}"/>"#, sig(y(0.0)));
    let _ = writeln!(s, r#"<line x1="{0}" y1="0" x2="{0}" y2="800"/>"#, sig(x(0.0)));
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g fill="none" stroke="#1f4e9c" stroke-width="2">"##);
    let _ = writeln!(s, r#"<polyline points="{lower}"/>"#);
    let _ = writeln!(s, r#"<polyline points="{upper}"/>"#);
    let _ = writeln!(s, "</g>");
    let (ax, ay) = (sig(x(curve.a_min)), sig(y(0.0)));
    let _ = writeln!(s, r##"<circle cx="{ax}" cy="{ay}" r="4" fill="#c0392b"/>"##);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="16">A = {}</text>"#,
        sig(x(curve.a_min) + 8.0),
        sig(y(0.0) - 8.0),
        sig_short(curve.a_min)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="28" font-family="sans-serif" font-size="18">q_α(𝔻), α = {alpha_label}</text>"#
    );
    s.push_str("</svg>\n");
    s
}

/// Six decimals, as in the figure annotations.
fn sig_short(x: f64) -> String {
    format!("{x:.6}")
}
