//! The `kummer` command-line tool.
//!
//! Every subcommand writes one JSON document (`"schema": 1`). Exit codes are
//! 0 on success, 1 when a computation or verification fails, and 2 for
//! usage errors and unsupported inputs.

pub mod cache;
pub mod commands;
pub mod config;
pub mod expr;
pub mod report;

use std::ffi::OsString;

use clap::Parser;
use serde_json::{json, Value};

use commands::Failure;
use config::{Cli, JobConfig};

pub const SCHEMA: u32 = 1;

/// Result of one invocation, before anything is printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, msg: String) -> Self {
        Outcome { code, stdout: String::new(), stderr: msg }
    }
}

fn render(job: &JobConfig, canonical: Value, body: Value, ok: bool) -> String {
    let mut doc = json!({ "schema": SCHEMA, "command": job.command, "config": canonical, "ok": ok });
    if let (Some(obj), Value::Object(extra)) = (doc.as_object_mut(), body) {
        obj.extend(extra);
    }
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    text
}

fn report_ok(text: &str) -> Option<bool> {
    serde_json::from_str::<Value>(text).ok()?.get("ok")?.as_bool()
}

/// Runs one job; the text is the report, the flag its `ok` field.
pub fn run_job(job: &JobConfig) -> Result<(String, bool, Option<bool>), Failure> {
    let canonical = job.canonical().map_err(Failure::Usage)?;
    let key = job.cache_dir.as_ref().map(|dir| (dir, cache::key(&canonical)));
    if let Some((dir, key)) = &key {
        if let Some(text) = cache::get(dir, key) {
            if let Some(ok) = report_ok(&text) {
                return Ok((text, ok, Some(true)));
            }
        }
    }
    let (body, ok) = commands::dispatch(job)?;
    let text = render(job, canonical, body, ok);
    if let Some((dir, key)) = &key {
        cache::put(dir, key, &text);
    }
    Ok((text, ok, key.map(|_| false)))
}

pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    let job = JobConfig::from_cli(&cli);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(job.threads.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => return Outcome::fail(2, format!("error: cannot start worker pool: {e}\n")),
    };
    let (text, ok, hit) = match pool.install(|| run_job(&job)) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => return Outcome::fail(2, format!("error: {msg}\n")),
        Err(Failure::Compute(msg)) => return Outcome::fail(1, format!("error: {msg}\n")),
    };
    let mut stderr = String::new();
    if let Some(hit) = hit {
        stderr = format!("{}\n", json!({ "cache_hit": hit }));
    }
    let code = if ok { 0 } else { 1 };
    match &job.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr },
            Err(e) => Outcome::fail(2, format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => Outcome { code, stdout: text, stderr },
    }
}
