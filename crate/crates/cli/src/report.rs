//! Reports: a `#` metadata block followed by a TSV table, or the same data
//! as one JSON object.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    /// Scalar facts about the run, in the order they were recorded.
    #[serde(serialize_with = "ordered_map")]
    pub facts: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: &str, seed: u64, columns: &[&str]) -> Self {
        Report {
            tool: "strop",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed,
            inputs: Vec::new(),
            facts: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.push(InputDigest {
            name: name.to_string(),
            sha256: crate::input::digest(bytes),
        });
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.push((key.to_string(), value.to_string()));
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = cells.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("# {} {}\n", self.tool, self.version);
        out.push_str(&format!("# command\t{}\n", self.command));
        out.push_str(&format!("# seed\t{}\n", self.seed));
        for i in &self.inputs {
            out.push_str(&format!(
                "# input\t{}\tsha256:{}\n",
                clean(&i.name),
                i.sha256
            ));
        }
        for (k, v) in &self.facts {
            out.push_str(&format!("# {}\t{}\n", clean(k), clean(v)));
        }
        out.push_str(&self.columns.join("\t"));
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| clean(c)).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

fn ordered_map<S: serde::Serializer>(pairs: &[(String, String)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(pairs.iter().map(|(k, v)| (k, v)))
}

/// Tabs and newlines would break the TSV layout.
fn clean(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}
