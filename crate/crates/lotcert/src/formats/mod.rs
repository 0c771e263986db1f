pub mod diagram;
pub mod dot;
pub mod dsl;
pub mod json;

use lotcert_core::Log;

/// JSON when the first non-blank character is `{`, the text format otherwise.
pub fn read_log(text: &str) -> anyhow::Result<Log> {
    if text.trim_start().starts_with('{') {
        json::parse_log(text)
    } else {
        Ok(dsl::parse(text)?)
    }
}
