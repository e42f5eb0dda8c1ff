use serde_json::{Map, Value};

/// Outcome of one named check.
///
/// A failed report always carries a witness; the constructors enforce it.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    name: String,
    pass: bool,
    details: Map<String, Value>,
    witness: Option<Value>,
}

impl VerificationReport {
    pub fn passed(name: impl Into<String>, details: Map<String, Value>) -> Self {
        VerificationReport { name: name.into(), pass: true, details, witness: None }
    }

    pub fn failed(name: impl Into<String>, details: Map<String, Value>, witness: Value) -> Self {
        VerificationReport { name: name.into(), pass: false, details, witness: Some(witness) }
    }

    /// Same report under another name.
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Appends a detail, replacing any previous value for `key`.
    pub fn with_detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pass(&self) -> bool {
        self.pass
    }

    /// Counts and parameters in insertion order.
    pub fn details(&self) -> &Map<String, Value> {
        &self.details
    }

    pub fn detail(&self, key: &str) -> Option<&Value> {
        self.details.get(key)
    }

    pub fn witness(&self) -> Option<&Value> {
        self.witness.as_ref()
    }

    /// `{name, pass, details, witness?}` with keys in that order.
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("name".into(), Value::from(self.name.clone()));
        obj.insert("pass".into(), Value::from(self.pass));
        obj.insert("details".into(), Value::Object(self.details.clone()));
        if let Some(w) = &self.witness {
            obj.insert("witness".into(), w.clone());
        }
        Value::Object(obj)
    }
}

/// A stage of a pipeline that did not hold.
#[derive(Debug)]
pub(crate) struct StageFailure {
    pub stage: &'static str,
    pub witness: Value,
}

impl StageFailure {
    pub fn new(stage: &'static str, witness: Value) -> Self {
        StageFailure { stage, witness }
    }
}

/// Collects details for a report while its stages run.
pub(crate) struct Pipeline {
    name: &'static str,
    details: Map<String, Value>,
}

impl Pipeline {
    pub fn new(name: &'static str) -> Self {
        Pipeline { name, details: Map::new() }
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn finish(self, outcome: std::result::Result<(), StageFailure>) -> VerificationReport {
        match outcome {
            Ok(()) => VerificationReport::passed(self.name, self.details),
            Err(f) => {
                let mut witness = Map::new();
                witness.insert("stage".into(), Value::from(f.stage));
                match f.witness {
                    Value::Object(extra) => witness.extend(extra),
                    other => {
                        witness.insert("detail".into(), other);
                    }
                }
                VerificationReport::failed(self.name, self.details, Value::Object(witness))
            }
        }
    }
}

/// Turns a library error into a stage failure.
pub(crate) fn stage<T>(name: &'static str, r: crate::Result<T>) -> std::result::Result<T, StageFailure> {
    r.map_err(|e| StageFailure::new(name, Value::from(e.to_string())))
}

/// Fails `name` with a lazily built witness unless `cond` holds.
pub(crate) fn ensure(
    cond: bool,
    name: &'static str,
    witness: impl FnOnce() -> Value,
) -> std::result::Result<(), StageFailure> {
    if cond {
        Ok(())
    } else {
        Err(StageFailure::new(name, witness()))
    }
}
