use serde::{Serialize, Serializer};

/// A real number written with 12 significant digits; non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(round12(self.0))
        } else {
            s.serialize_none()
        }
    }
}

pub fn round12(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Scientific notation with 12 significant digits, as used in CSV cells.
pub fn sci(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.11e}")
    }
}

pub const CSV_HEADER: &str = "varied,c_bures,c_hellinger,argmax_ni_bures,argmax_ni_hellinger";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub value: f64,
    pub argmax_ni: f64,
}

impl Cell {
    pub const FAILED: Cell = Cell {
        value: f64::NAN,
        argmax_ni: f64::NAN,
    };
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub varied: f64,
    pub bures: Option<Cell>,
    pub hellinger: Option<Cell>,
}

impl SweepRow {
    pub fn to_csv(self) -> String {
        let value = |c: &Option<Cell>| c.map(|c| sci(c.value)).unwrap_or_default();
        let argmax = |c: &Option<Cell>| c.map(|c| sci(c.argmax_ni)).unwrap_or_default();
        format!(
            "{},{},{},{},{}",
            sci(self.varied),
            value(&self.bures),
            value(&self.hellinger),
            argmax(&self.bures),
            argmax(&self.hellinger)
        )
    }
}

pub fn csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}
