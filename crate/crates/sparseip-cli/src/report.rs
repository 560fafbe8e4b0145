//! Report documents: line-delimited `key: value` text or one JSON object,
//! rationals always rendered as exact strings.

use std::time::Duration;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;
use sha2::{Digest, Sha256};

use sparseip::rational::format_rational;
use sparseip::{Rational, Sense};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

pub fn error_doc(format: Format, msg: &str) -> String {
    match format {
        Format::Plain => format!("error: {msg}\n"),
        Format::Json => format!("{}\n", json!({ "error": msg })),
    }
}

/// Hex SHA-256 of the canonical instance document.
pub fn digest_hex(doc: &str) -> String {
    hex::encode(Sha256::digest(doc.as_bytes()))
}

/// Approximation factor actually observed against the exact optimum:
/// cost over OPT for covering, OPT over value for packing, so feasible
/// output always gives a ratio of at least 1. `None` means infinite
/// (a zero optimum was approximated by a nonzero value or vice versa).
pub fn observed_ratio(sense: Sense, value: &Rational, opt: &Rational) -> Option<Rational> {
    let (num, den) = match sense {
        Sense::Cover => (value, opt),
        Sense::Pack => (opt, value),
    };
    if den.is_zero() {
        if num.is_zero() {
            Some(Rational::one())
        } else {
            None
        }
    } else {
        Some(num / den)
    }
}

/// What one solver run produced, independent of output format.
pub struct Solved {
    pub variant: &'static str,
    pub x: Vec<BigInt>,
    pub value: Rational,
    pub lp_value: Rational,
    pub ratio_bound: Rational,
    /// Variant-specific report fields, rendered in order.
    pub extra: Vec<(&'static str, String)>,
}

pub enum OracleField {
    NotRun,
    /// `ratio` is `None` when it is infinite.
    Value { opt: Rational, ratio: Option<Rational> },
    BudgetExceeded,
}

pub struct RunReport {
    pub digest: String,
    pub solved: Solved,
    pub oracle: OracleField,
    pub wall: Duration,
}

fn wall_ms(wall: Duration) -> f64 {
    wall.as_secs_f64() * 1e3
}

fn ratio_str(r: &Option<Rational>) -> String {
    match r {
        Some(r) => format_rational(r),
        None => "inf".to_string(),
    }
}

impl RunReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.render_plain(),
            Format::Json => self.render_json(),
        }
    }

    fn render_plain(&self) -> String {
        let s = &self.solved;
        let mut out = String::new();
        out.push_str(&format!("digest: {}\n", self.digest));
        out.push_str(&format!("variant: {}\n", s.variant));
        out.push_str(&format!("ratio_bound: {}\n", format_rational(&s.ratio_bound)));
        out.push_str(&format!("lp_value: {}\n", format_rational(&s.lp_value)));
        for (key, value) in &s.extra {
            out.push_str(&format!("{key}: {value}\n"));
        }
        let xs = s.x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        if xs.is_empty() {
            out.push_str("x:\n");
        } else {
            out.push_str(&format!("x: {xs}\n"));
        }
        out.push_str(&format!("objective: {}\n", format_rational(&s.value)));
        match &self.oracle {
            OracleField::NotRun => {}
            OracleField::Value { opt, ratio } => {
                out.push_str(&format!("oracle: {}\n", format_rational(opt)));
                out.push_str(&format!("observed_ratio: {}\n", ratio_str(ratio)));
            }
            OracleField::BudgetExceeded => out.push_str("oracle: budget-exceeded\n"),
        }
        out.push_str(&format!("wall_ms: {:.3}\n", wall_ms(self.wall)));
        out
    }

    fn render_json(&self) -> String {
        let s = &self.solved;
        let mut doc = json!({
            "digest": self.digest,
            "variant": s.variant,
            "ratio_bound": format_rational(&s.ratio_bound),
            "lp_value": format_rational(&s.lp_value),
            "x": s.x.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "objective": format_rational(&s.value),
            "wall_ms": wall_ms(self.wall),
        });
        let map = doc.as_object_mut().unwrap();
        for (key, value) in &s.extra {
            map.insert((*key).to_string(), json!(value));
        }
        match &self.oracle {
            OracleField::NotRun => {}
            OracleField::Value { opt, ratio } => {
                map.insert("oracle".into(), json!(format_rational(opt)));
                map.insert("observed_ratio".into(), json!(ratio_str(ratio)));
            }
            OracleField::BudgetExceeded => {
                map.insert("oracle".into(), serde_json::Value::Null);
                map.insert("oracle_status".into(), json!("budget-exceeded"));
            }
        }
        format!("{doc}\n")
    }
}
