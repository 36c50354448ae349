#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use sbs_cli::{parse_config, RunConfig};
use serde_json::{json, Value};

pub fn demo_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../demo")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/snowball")
}

/// The bundled demo config with its output redirected to `out`.
pub fn demo_config(out: &Path, extra: &[(&str, Value)]) -> RunConfig {
    let text = std::fs::read_to_string(demo_dir().join("config.json")).unwrap();
    let mut obj: serde_json::Map<String, Value> = serde_json::from_str(&text).unwrap();
    obj.insert("output_dir".into(), json!(out));
    for (k, v) in extra {
        obj.insert(k.to_string(), v.clone());
    }
    parse_config(&Value::Object(obj).to_string(), &demo_dir()).unwrap()
}

/// Every file in `dir`, by name.
pub fn read_outputs(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap())
        .map(|e| (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap()))
        .collect()
}

/// The manifest without its timestamp key.
pub fn manifest_sans_timestamp(bytes: &[u8]) -> Value {
    let mut v: Value = serde_json::from_slice(bytes).unwrap();
    v.as_object_mut().unwrap().remove(sbs_cli::commands::MANIFEST_TIMESTAMP_KEY);
    v
}
