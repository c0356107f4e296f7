use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// What a command prints: a human report, a JSON value and a CSV table.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new<T: Serialize>(text: String, value: &T) -> Self {
        Report {
            text,
            json: serde_json::to_value(value).expect("report values serialize"),
            header: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn table<S: ToString>(mut self, header: &[S], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|h| h.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut t = self.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                if self.header.is_empty() {
                    w.write_record(["json"]).expect("csv");
                    w.write_record([self.json.to_string()]).expect("csv");
                } else {
                    w.write_record(&self.header).expect("csv");
                    for r in &self.rows {
                        w.write_record(r).expect("csv");
                    }
                }
                String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
            }
        }
    }
}
