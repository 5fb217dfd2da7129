use std::fmt::Write as _;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{Map, Value};

use crate::schurweyl::CacheStats;

/// `%.12g`-style formatting: twelve significant digits, trailing zeros
/// trimmed, scientific outside `[1e-5, 1e12)`.
pub fn g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        trim_fraction(&s).to_string()
    } else {
        let s = format!("{x:.11e}");
        let (mant, e) = s.split_once('e').expect("scientific output");
        format!("{}e{}", trim_fraction(mant), e)
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Line-oriented report with a header block and an optional JSON sidecar.
pub struct Report {
    command: String,
    config: Vec<(String, String)>,
    seed: Option<u64>,
    tolerances: Vec<(String, f64)>,
    cache: Option<CacheStats>,
    body: String,
    pub summary: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            config: Vec::new(),
            seed: None,
            tolerances: Vec::new(),
            cache: None,
            body: String::new(),
            summary: Map::new(),
        }
    }

    pub fn config(&mut self, key: &str, value: impl ToString) {
        self.config.push((key.into(), value.to_string()));
    }

    pub fn seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    pub fn tolerance(&mut self, key: &str, value: f64) {
        self.tolerances.push((key.into(), value));
    }

    pub fn cache(&mut self, stats: CacheStats) {
        self.cache = Some(stats);
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.body.push_str(s.as_ref());
        self.body.push('\n');
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.into(), value.into());
    }

    pub fn render(&self, verdict: &str) -> String {
        let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        let mut out = String::new();
        let _ = writeln!(out, "# tetra-horn {}", self.command);
        let _ = writeln!(out, "# timestamp {stamp}");
        for (k, v) in &self.config {
            let _ = writeln!(out, "# config {k}={v}");
        }
        match self.seed {
            Some(s) => {
                let _ = writeln!(out, "# seed {s}");
            }
            None => out.push_str("# seed none\n"),
        }
        for (k, v) in &self.tolerances {
            let _ = writeln!(out, "# tolerance {k}={}", g12(*v));
        }
        let c = self.cache.unwrap_or_default();
        let _ = writeln!(out, "# cache hits={} misses={} entries={} loaded={}", c.hits, c.misses, c.entries, c.loaded);
        out.push_str(&self.body);
        let _ = writeln!(out, "verdict {verdict}");
        out
    }

    pub fn sidecar(&self, verdict: &str) -> Value {
        let mut m = self.summary.clone();
        m.insert("command".into(), self.command.clone().into());
        m.insert("verdict".into(), verdict.into());
        m.insert("seed".into(), self.seed.map_or(Value::Null, Value::from));
        m.insert(
            "config".into(),
            Value::Object(self.config.iter().map(|(k, v)| (k.clone(), Value::from(v.clone()))).collect()),
        );
        m.insert(
            "tolerances".into(),
            Value::Object(self.tolerances.iter().map(|(k, v)| (k.clone(), Value::from(*v))).collect()),
        );
        if let Some(c) = self.cache {
            m.insert("cache".into(), serde_json::json!({"hits": c.hits, "misses": c.misses, "entries": c.entries, "loaded": c.loaded}));
        }
        Value::Object(m)
    }
}

pub fn write_text(path: &Path, text: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text)
}
