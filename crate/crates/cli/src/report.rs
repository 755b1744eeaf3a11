//! Deterministic report rendering. Text output is byte-stable across runs
//! with equal inputs; elapsed time is recorded but only printed at
//! verbosity ≥ 1 so that default output stays comparable.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Inconclusive,
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub header: Vec<(String, String)>,
    pub results: Vec<(String, String)>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            header: Vec::new(),
            results: Vec::new(),
            status: Status::Ok,
            elapsed_ms: None,
        }
    }

    pub fn head(&mut self, k: &str, v: impl Into<String>) -> &mut Self {
        self.header.push((k.to_string(), v.into()));
        self
    }

    pub fn line(&mut self, k: &str, v: impl Into<String>) -> &mut Self {
        self.results.push((k.to_string(), v.into()));
        self
    }

    pub fn to_text(&self, verbose: bool) -> String {
        let mut s = format!("homkern {}\n", self.command);
        for (k, v) in &self.header {
            s.push_str(&format!("{k}: {v}\n"));
        }
        s.push_str("result:\n");
        for (k, v) in &self.results {
            s.push_str(&format!("  {k} = {v}\n"));
        }
        if verbose {
            if let Some(ms) = self.elapsed_ms {
                s.push_str(&format!("elapsed: {ms} ms\n"));
            }
        }
        s.push_str(match self.status {
            Status::Ok => "status: ok\n",
            Status::Inconclusive => "status: inconclusive\n",
        });
        s
    }

    pub fn to_json(&self, verbose: bool) -> String {
        if verbose {
            serde_json::to_string_pretty(self).expect("report serializes")
        } else {
            let mut clone = Report {
                command: self.command.clone(),
                header: self.header.clone(),
                results: self.results.clone(),
                status: self.status,
                elapsed_ms: None,
            };
            clone.elapsed_ms = None;
            serde_json::to_string_pretty(&clone).expect("report serializes")
        }
    }
}
