//! Pairs the JSON payload of a command with its human-readable form.

use serde_json::Value;

pub struct Rendered {
    pub json: Value,
    pub text: String,
}

impl Rendered {
    pub fn new(json: Value, text: String) -> Self {
        Rendered { json, text }
    }
}
