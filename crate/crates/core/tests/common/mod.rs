//! Shared test support: an independent window-metric oracle, random
//! segmentations, fixture paths and a synthetic pool with planted entities.

#![allow(dead_code)]

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use segbench::Segmentation;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Segment label of each unit, 1-indexed (`labels[0]` is unused).
fn labels(seg: &Segmentation) -> Vec<usize> {
    let mut out = vec![usize::MAX];
    for (label, range) in seg.segment_ranges().into_iter().enumerate() {
        out.extend(range.map(|_| label));
    }
    out
}

/// Literal Pk and WindowDiff: list every window `(i, i + k)` for
/// `i = 1..=N-k`, compare segment membership of its two end units, and count
/// the boundaries in slots `i..=i+k-1` one by one.
pub fn metric_oracle(hyp: &Segmentation, reference: &Segmentation, k: usize) -> (f64, f64) {
    let n = reference.total_units();
    assert_eq!(hyp.total_units(), n);
    assert!(k >= 1 && k < n);
    let (lh, lr) = (labels(hyp), labels(reference));
    let windows: Vec<(usize, usize)> = (1..=n - k).map(|i| (i, i + k)).collect();
    let count = |seg: &Segmentation, i: usize, j: usize| {
        seg.boundaries().iter().filter(|&&t| i <= t && t < j).count()
    };
    let mut pk = 0;
    let mut wd = 0;
    for &(i, j) in &windows {
        if (lh[i] == lh[j]) != (lr[i] == lr[j]) {
            pk += 1;
        }
        if count(hyp, i, j) != count(reference, i, j) {
            wd += 1;
        }
    }
    (pk as f64 / windows.len() as f64, wd as f64 / windows.len() as f64)
}

pub fn random_segmentation(rng: &mut impl Rng, n: usize) -> Segmentation {
    let density: f64 = rng.gen();
    let b = (1..n).filter(|_| rng.gen_bool(density)).collect();
    Segmentation::new(b, n).unwrap()
}

const FIRST_MALE: &[&str] = &[
    "Arthur", "Bernard", "Calvin", "Dexter", "Edmund", "Forrest", "Gideon", "Horace", "Irving", "Jasper",
];
const FIRST_FEMALE: &[&str] = &[
    "Agatha", "Beatrice", "Cordelia", "Dorothea", "Eleanor", "Florence", "Georgina", "Harriet", "Imogen",
    "Josephine",
];
const SURNAMES: &[&str] = &[
    "Abernathy", "Blackwood", "Carrington", "Delacroix", "Ellsworth", "Fairbanks", "Gallagher", "Hathaway",
    "Ingersoll", "Jorgensen", "Kingsley", "Lockhart", "Montague", "Northcott", "Oglethorpe", "Pemberton",
    "Quimby", "Radcliffe", "Sinclair", "Thornbury", "Underhill", "Vanderpool", "Whitcombe", "Yardley",
    "Zimmerman", "Ashcroft", "Brewster", "Cavendish", "Drummond", "Everhart", "Fitzgerald", "Greenleaf",
    "Holloway", "Islington", "Kensington", "Longfellow", "Merriweather", "Nightingale", "Osgood", "Prescott",
];
const TOWNS: &[&str] = &[
    "Ashford", "Brookhaven", "Cedarville", "Dunmore", "Elmhurst", "Foxborough", "Glenwood", "Hartwell",
    "Ironton", "Juniper", "Kettering", "Lakewood", "Millbrook", "Newbury", "Oakdale", "Pinecrest",
    "Quarry", "Riverton", "Stonebridge", "Thornton",
];
const ROLES: &[&str] = &["senator", "engineer", "farmer", "doctor", "lawyer", "mayor", "teacher", "banker"];
const MONTHS: &[&str] = &["January", "March", "May", "July", "September", "November"];
/// Content words shared by every document.
const FILLER: &[&str] = &[
    "report", "meeting", "office", "morning", "decision", "letter", "county", "family", "week", "plan",
    "house", "question", "money", "road", "board", "people", "evening", "matter", "paper", "story",
    "visit", "record", "building", "group", "member", "statement", "price", "street", "problem", "result",
];

struct Person {
    forms: [String; 4],
    subject: &'static str,
    possessive: &'static str,
}

/// Writes a 20-document pool and matching standoff annotations under `dir`
/// and returns `(pool_dir, annotation_dir)`.
///
/// Each document has its own two people, one town and one date. People are
/// named four ways (full name, surname, title plus surname, role noun shared
/// across documents) and are picked up by pronouns that are annotated as
/// mentions. Dates use month names shared across documents. The remaining
/// words come from a vocabulary common to the whole pool plus a few
/// document-specific topic words.
pub fn write_planted_pool(dir: &Path, seed: u64) -> (PathBuf, PathBuf) {
    let pool_dir = dir.join("pool");
    let ann_dir = dir.join("annotations");
    fs::create_dir_all(&pool_dir).unwrap();
    fs::create_dir_all(&ann_dir).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut surnames: Vec<&str> = SURNAMES.to_vec();
    surnames.shuffle(&mut rng);
    let mut topic_pool: Vec<String> = (0..20 * 3).map(|i| format!("topic{i}")).collect();
    topic_pool.shuffle(&mut rng);

    for d in 0..20 {
        let doc_id = format!("P{d:02}");
        let town = TOWNS[d];
        let date = format!("{} {}", MONTHS.choose(&mut rng).unwrap(), rng.gen_range(1..=28));
        let topics = &topic_pool[d * 3..d * 3 + 3];
        let people: Vec<Person> = (0..2)
            .map(|p| {
                let surname = surnames[d * 2 + p];
                let female = rng.gen_bool(0.5);
                let first = if female { FIRST_FEMALE } else { FIRST_MALE }.choose(&mut rng).unwrap();
                let title = if female { "Mrs." } else { "Mr." };
                Person {
                    forms: [
                        format!("{first} {surname}"),
                        surname.to_string(),
                        format!("{title} {surname}"),
                        format!("the {}", ROLES.choose(&mut rng).unwrap()),
                    ],
                    subject: if female { "she" } else { "he" },
                    possessive: if female { "her" } else { "his" },
                }
            })
            .collect();

        let mut sentences: Vec<String> = Vec::new();
        let mut rows = String::new();
        let mut offset = 0;
        for _ in 0..12 {
            let mut s = String::new();
            let mut mentions: Vec<(usize, usize, String, &str)> = Vec::new();
            let mut push = |s: &mut String, text: &str, entity: Option<(String, &'static str)>| {
                if !s.is_empty() {
                    s.push(' ');
                }
                if let Some((id, etype)) = entity {
                    mentions.push((s.len(), s.len() + text.len(), id, etype));
                }
                s.push_str(text);
            };
            let who = rng.gen_range(0..2);
            let form = &people[who].forms[rng.gen_range(0..4)];
            push(&mut s, form, Some((format!("{doc_id}person{}", who + 1), "person")));
            for _ in 0..rng.gen_range(2..4) {
                push(&mut s, FILLER.choose(&mut rng).unwrap(), None);
            }
            if rng.gen_bool(0.3) {
                push(&mut s, topics.choose(&mut rng).unwrap(), None);
            }
            if rng.gen_bool(0.7) {
                let p = &people[who];
                let pron = if rng.gen_bool(0.5) { p.subject } else { p.possessive };
                push(&mut s, pron, Some((format!("{doc_id}person{}", who + 1), "person")));
            }
            for _ in 0..rng.gen_range(1..3) {
                push(&mut s, FILLER.choose(&mut rng).unwrap(), None);
            }
            match rng.gen_range(0..3) {
                0 => push(&mut s, town, Some((format!("{doc_id}location1"), "location"))),
                1 => push(&mut s, &date, Some((format!("{doc_id}date1"), "date"))),
                _ => {
                    let other = &people[1 - who];
                    let form = &other.forms[rng.gen_range(0..4)];
                    push(&mut s, form, Some((format!("{doc_id}person{}", 2 - who), "person")));
                }
            }
            s.push('.');
            let mut chars = s.chars();
            let head = chars.next().unwrap().to_uppercase().to_string();
            let cased = head.clone() + chars.as_str();
            for (start, end, id, etype) in mentions {
                let surface = &cased[start..end];
                writeln!(rows, "{doc_id}\t{id}\t{etype}\t{}\t{}\t{surface}", offset + start, offset + end).unwrap();
            }
            offset += cased.len() + 1;
            sentences.push(cased);
        }
        fs::write(pool_dir.join(format!("{doc_id}.txt")), sentences.join("\n") + "\n").unwrap();
        fs::write(ann_dir.join(format!("{doc_id}.tsv")), rows).unwrap();
    }
    (pool_dir, ann_dir)
}
