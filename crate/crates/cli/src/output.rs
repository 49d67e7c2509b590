use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    MonteCarlo,
}

impl Provenance {
    fn as_str(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::MonteCarlo => "montecarlo",
        }
    }
}

/// The JSON document printed for every successful command. Keys serialize
/// in sorted order.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub op: String,
    pub params: Map<String, Value>,
    pub result: Value,
    pub provenance: Provenance,
    /// Set when the command ran but its check failed (exit code 1).
    pub failed: bool,
}

impl CommandResult {
    pub fn exact(op: &str, params: Map<String, Value>, result: Value) -> Self {
        Self {
            op: op.into(),
            params,
            result,
            provenance: Provenance::Exact,
            failed: false,
        }
    }

    pub fn monte_carlo(op: &str, params: Map<String, Value>, result: Value) -> Self {
        Self {
            provenance: Provenance::MonteCarlo,
            ..Self::exact(op, params, result)
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "op": self.op,
            "params": self.params,
            "result": self.result,
            "provenance": self.provenance.as_str(),
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

/// Builds a params map from `(key, value)` pairs.
macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = serde_json::Map::new();
        $(m.insert($k.to_string(), serde_json::json!($v));)*
        m
    }};
}
