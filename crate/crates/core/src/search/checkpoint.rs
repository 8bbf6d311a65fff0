//! Resumable record of finished search shards, one JSON object per line.
//!
//! The first line describes the search; later lines are
//! `{"shard":k,"families":[[bits...]]}` with each family given as the
//! bitmask indices of its members. A truncated final line (from an
//! interrupted run) is ignored and overwritten.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::kernel::{ones, Mask};
use super::SearchConfig;
use crate::{Error, Result};

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    n: usize,
    min_size: usize,
    max_size: usize,
    fix_chain: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShardLine {
    shard: usize,
    families: Vec<Vec<u32>>,
}

pub(crate) struct Checkpoint {
    file: File,
    completed: BTreeMap<usize, Vec<Mask>>,
}

impl Checkpoint {
    pub fn open(path: &Path, config: &SearchConfig) -> Result<Checkpoint> {
        let header = Header {
            n: config.n,
            min_size: config.min_size,
            max_size: config.max_size,
            fix_chain: config.fix_chain,
        };
        let mut file = OpenOptions::new()
            .read(true)
            .write(true)
            .create(true)
            .truncate(false)
            .open(path)?;
        let mut completed = BTreeMap::new();
        let mut good_len = 0u64;
        let mut saw_header = false;
        {
            let mut reader = BufReader::new(&file);
            let mut line = String::new();
            loop {
                line.clear();
                let read = reader.read_line(&mut line)?;
                if read == 0 || !line.ends_with('\n') {
                    break;
                }
                if !saw_header {
                    let stored: Header = serde_json::from_str(&line)?;
                    if stored != header {
                        return Err(Error::InvalidArgument(format!(
                            "checkpoint {} belongs to a different search",
                            path.display()
                        )));
                    }
                    saw_header = true;
                } else {
                    let Ok(entry) = serde_json::from_str::<ShardLine>(&line) else {
                        break;
                    };
                    let masks = entry
                        .families
                        .iter()
                        .map(|f| f.iter().fold(0 as Mask, |m, &b| m | 1 << b))
                        .collect();
                    completed.insert(entry.shard, masks);
                }
                good_len += read as u64;
            }
        }
        file.set_len(good_len)?;
        file.seek(SeekFrom::End(0))?;
        if !saw_header {
            writeln!(file, "{}", serde_json::to_string(&header)?)?;
            file.flush()?;
        }
        Ok(Checkpoint { file, completed })
    }

    pub fn completed(&self) -> &BTreeMap<usize, Vec<Mask>> {
        &self.completed
    }

    pub fn record(&mut self, shard: usize, found: &[Mask]) -> Result<()> {
        let entry = ShardLine {
            shard,
            families: found
                .iter()
                .map(|&m| ones(m).map(|b| b as u32).collect())
                .collect(),
        };
        writeln!(self.file, "{}", serde_json::to_string(&entry)?)?;
        self.file.flush()?;
        self.completed.insert(shard, found.to_vec());
        Ok(())
    }
}
