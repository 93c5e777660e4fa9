//! Ingestion of Twitter-like activity data from delimited files.
//!
//! Three files feed the pipeline:
//!
//! * follow file — `follower<TAB>followee`, one relation per line;
//! * tweet file — `user<TAB>tweet_id`, one tweet per line;
//! * action file — `type<TAB>actor<TAB>target_user<TAB>tweet_id` with
//!   `type` either `RT` (actor retweeted target's tweet) or `MENTION`
//!   (actor's tweet mentions target).
//!
//! All files are UTF-8; `#`-prefixed comment lines and blank lines are
//! ignored. Malformed lines do not abort ingestion: they are collected
//! with their line numbers and reported to the caller. Exact duplicate
//! records are dropped, as are self-interactions (self-follow,
//! self-mention, self-retweet).

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("input file not found: {path}")]
    MissingFile { path: PathBuf },
    #[error("failed reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: invalid UTF-8")]
    ParseError { path: PathBuf, line: usize },
}

/// The two implicit-relation record kinds carried by the action file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionKind {
    /// Actor retweeted one of the target's tweets.
    Retweet,
    /// One of the actor's tweets mentions the target.
    Mention,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FollowRecord {
    pub follower: String,
    pub followee: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TweetRecord {
    pub user: String,
    pub tweet_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActionRecord {
    pub kind: ActionKind,
    pub actor: String,
    pub target: String,
    pub tweet_id: String,
}

/// A structurally invalid line, kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedLine {
    pub path: PathBuf,
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for RejectedLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.path.display(), self.line, self.reason)
    }
}

/// Merged, deduplicated activity data ready for graph construction.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct ActivityLog {
    pub follows: Vec<FollowRecord>,
    pub tweets: Vec<TweetRecord>,
    pub actions: Vec<ActionRecord>,
    /// Malformed lines encountered across all three files.
    pub rejected: Vec<RejectedLine>,
    /// Count of records dropped because actor and target coincide.
    pub self_interactions: usize,
    /// Count of exact duplicate records dropped.
    pub duplicates: usize,
}

impl ActivityLog {
    pub fn record_count(&self) -> usize {
        self.follows.len() + self.tweets.len() + self.actions.len()
    }
}

/// Loads and merges the three activity files.
///
/// Missing files and unreadable bytes are hard errors; malformed lines
/// are tallied in [`ActivityLog::rejected`] instead.
pub fn load_activity_log(
    follow_file: &Path,
    tweet_file: &Path,
    action_file: &Path,
) -> Result<ActivityLog, IngestError> {
    let mut log = ActivityLog::default();

    scan_file(follow_file, &mut log, |fields, log| match fields {
        [follower, followee] if !follower.is_empty() && !followee.is_empty() => {
            if follower == followee {
                log.self_interactions += 1;
            } else {
                log.follows.push(FollowRecord {
                    follower: follower.to_string(),
                    followee: followee.to_string(),
                });
            }
            Ok(())
        }
        _ => Err("expected `follower<TAB>followee`".to_string()),
    })?;

    scan_file(tweet_file, &mut log, |fields, log| match fields {
        [user, tweet_id] if !user.is_empty() && !tweet_id.is_empty() => {
            log.tweets.push(TweetRecord {
                user: user.to_string(),
                tweet_id: tweet_id.to_string(),
            });
            Ok(())
        }
        _ => Err("expected `user<TAB>tweet_id`".to_string()),
    })?;

    scan_file(action_file, &mut log, |fields, log| match fields {
        [kind, actor, target, tweet_id]
            if !actor.is_empty() && !target.is_empty() && !tweet_id.is_empty() =>
        {
            let kind = match *kind {
                "RT" => ActionKind::Retweet,
                "MENTION" => ActionKind::Mention,
                other => return Err(format!("unknown action type `{other}`")),
            };
            if actor == target {
                log.self_interactions += 1;
            } else {
                log.actions.push(ActionRecord {
                    kind,
                    actor: actor.to_string(),
                    target: target.to_string(),
                    tweet_id: tweet_id.to_string(),
                });
            }
            Ok(())
        }
        _ => Err("expected `type<TAB>actor<TAB>target_user<TAB>tweet_id`".to_string()),
    })?;

    dedup(&mut log);
    Ok(log)
}

fn scan_file<F>(path: &Path, log: &mut ActivityLog, mut parse: F) -> Result<(), IngestError>
where
    F: FnMut(&[&str], &mut ActivityLog) -> Result<(), String>,
{
    let bytes = match std::fs::read(path) {
        Ok(bytes) => bytes,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(IngestError::MissingFile {
                path: path.to_path_buf(),
            })
        }
        Err(e) => {
            return Err(IngestError::Io {
                path: path.to_path_buf(),
                source: e,
            })
        }
    };

    for (idx, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let line_no = idx + 1;
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let line = std::str::from_utf8(raw).map_err(|_| IngestError::ParseError {
            path: path.to_path_buf(),
            line: line_no,
        })?;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if let Err(reason) = parse(&fields, log) {
            log.rejected.push(RejectedLine {
                path: path.to_path_buf(),
                line: line_no,
                reason,
            });
        }
    }
    Ok(())
}

fn dedup(log: &mut ActivityLog) {
    let before = log.record_count();
    let mut seen_follow = HashSet::new();
    log.follows.retain(|r| seen_follow.insert(r.clone()));
    let mut seen_tweet = HashSet::new();
    log.tweets.retain(|r| seen_tweet.insert(r.clone()));
    let mut seen_action = HashSet::new();
    log.actions.retain(|r| seen_action.insert(r.clone()));
    log.duplicates = before - log.record_count();
}
