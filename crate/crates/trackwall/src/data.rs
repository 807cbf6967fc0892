//! Loading the shipped data files.
//!
//! All files are UTF-8 text; blank lines and lines starting with `#` are
//! ignored. `public_suffix_snapshot.dat` uses the standard list format
//! instead, with `//` comments.

use std::fs;
use std::path::{Path, PathBuf};

use trackwall_core::{
    AdDomainList, AllowedDomains, DomainCategoryList, Lexicon, SuffixList, Taxonomy, Tokenizer,
};

pub const TAXONOMY_FILE: &str = "taxonomy.txt";
pub const SUBCATEGORIES_FILE: &str = "subcategories.tsv";
pub const STOPWORDS_FILE: &str = "stopwords.txt";
pub const LEXICON_FILE: &str = "lexicon.tsv";
pub const DOMAINS_FILE: &str = "domains.tsv";
pub const ALLOWED_FILE: &str = "allowed_domains.txt";
pub const AD_DOMAINS_FILE: &str = "ad_domains.txt";
pub const SUFFIX_FILE: &str = "public_suffix_snapshot.dat";

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Unreadable {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Invalid {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

/// Everything loaded from a data directory.
#[derive(Debug, Clone)]
pub struct DataSet {
    pub taxonomy: Taxonomy,
    pub tokenizer: Tokenizer,
    pub lexicon: Lexicon,
    pub domains: DomainCategoryList,
    pub suffixes: SuffixList,
    pub allowed: AllowedDomains,
    pub ads: AdDomainList,
}

impl DataSet {
    pub fn load(dir: &Path) -> Result<Self, DataError> {
        let taxonomy = load_taxonomy(dir)?;
        Ok(DataSet {
            tokenizer: load_stopwords(&dir.join(STOPWORDS_FILE))?,
            lexicon: load_lexicon(&dir.join(LEXICON_FILE), &taxonomy)?,
            domains: load_domains(&dir.join(DOMAINS_FILE), &taxonomy)?,
            suffixes: load_suffixes(&dir.join(SUFFIX_FILE))?,
            allowed: load_allowed(&dir.join(ALLOWED_FILE))?,
            ads: AdDomainList::new(read_lines(&dir.join(AD_DOMAINS_FILE))?.map(|(_, l)| l)),
            taxonomy,
        })
    }
}

fn read(path: &Path) -> Result<String, DataError> {
    fs::read_to_string(path).map_err(|source| DataError::Unreadable {
        path: path.to_path_buf(),
        source,
    })
}

/// Non-comment, non-blank lines with 1-based line numbers.
fn read_lines(path: &Path) -> Result<impl Iterator<Item = (usize, String)>, DataError> {
    let text = read(path)?;
    let lines: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').to_string()))
        .collect();
    Ok(lines.into_iter())
}

fn invalid(path: &Path, line: usize, message: impl ToString) -> DataError {
    DataError::Invalid {
        path: path.to_path_buf(),
        line,
        message: message.to_string(),
    }
}

pub fn load_taxonomy(dir: &Path) -> Result<Taxonomy, DataError> {
    let path = dir.join(TAXONOMY_FILE);
    let names: Vec<String> = read_lines(&path)?.map(|(_, l)| l.trim().to_string()).collect();
    let taxonomy = Taxonomy::new(&names).map_err(|e| invalid(&path, 0, e))?;
    let sub_path = dir.join(SUBCATEGORIES_FILE);
    if !sub_path.exists() {
        return Ok(taxonomy);
    }
    let mut pairs = Vec::new();
    for (n, line) in read_lines(&sub_path)? {
        let (sub, top) = line
            .split_once('\t')
            .ok_or_else(|| invalid(&sub_path, n, "expected <sub>\\t<top>"))?;
        pairs.push((sub.to_string(), top.to_string()));
    }
    taxonomy
        .with_subcategories(pairs)
        .map_err(|e| invalid(&sub_path, 0, e))
}

pub fn load_stopwords(path: &Path) -> Result<Tokenizer, DataError> {
    let words: Vec<String> = read_lines(path)?
        .flat_map(|(_, l)| {
            l.split_whitespace()
                .map(str::to_string)
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(Tokenizer::new(words))
}

pub fn load_lexicon(path: &Path, taxonomy: &Taxonomy) -> Result<Lexicon, DataError> {
    let mut lexicon = Lexicon::new();
    for (n, line) in read_lines(path)? {
        let mut cols = line.split('\t');
        let (Some(term), Some(idf), Some(weights), None) =
            (cols.next(), cols.next(), cols.next(), cols.next())
        else {
            return Err(invalid(path, n, "expected <term>\\t<idf>\\t<cat>:<w>,..."));
        };
        let idf: f64 = idf
            .trim()
            .parse()
            .map_err(|_| invalid(path, n, format!("bad idf `{idf}`")))?;
        let mut pairs = Vec::new();
        for part in weights.split(',') {
            let (cat, w) = part
                .rsplit_once(':')
                .ok_or_else(|| invalid(path, n, format!("bad weight `{part}`")))?;
            let w: f64 = w
                .trim()
                .parse()
                .map_err(|_| invalid(path, n, format!("bad weight `{part}`")))?;
            pairs.push((cat.trim(), w));
        }
        lexicon
            .insert(taxonomy, term, idf, pairs)
            .map_err(|e| invalid(path, n, e))?;
    }
    Ok(lexicon)
}

pub fn load_domains(path: &Path, taxonomy: &Taxonomy) -> Result<DomainCategoryList, DataError> {
    let mut list = DomainCategoryList::new();
    for (n, line) in read_lines(path)? {
        let (key, cats) = line
            .split_once('\t')
            .ok_or_else(|| invalid(path, n, "expected <domain>\\t<category>[,...]"))?;
        list.insert(taxonomy, key, cats.split(',').map(str::trim))
            .map_err(|e| invalid(path, n, e))?;
    }
    Ok(list)
}

pub fn load_suffixes(path: &Path) -> Result<SuffixList, DataError> {
    SuffixList::parse(&read(path)?).map_err(|e| invalid(path, 0, e))
}

pub fn load_allowed(path: &Path) -> Result<AllowedDomains, DataError> {
    let allowed = AllowedDomains::new(read_lines(path)?.map(|(_, l)| l));
    if allowed.is_empty() {
        return Err(invalid(path, 0, "allowlist is empty"));
    }
    Ok(allowed)
}

/// `data/` at the workspace root, for tests and the default CLI value when
/// run from a checkout.
pub fn default_data_dir() -> PathBuf {
    let here = Path::new(env!("CARGO_MANIFEST_DIR"));
    here.join("../../data")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_data_loads() {
        let d = DataSet::load(&default_data_dir()).unwrap();
        assert_eq!(d.taxonomy.len(), 32);
        assert!(d.lexicon.len() > 500);
        assert!(d.domains.len() > 20);
        assert!(!d.allowed.is_empty());
        assert!(!d.ads.is_empty());
        assert_eq!(
            d.suffixes.registrable_domain("news.bbc.co.uk").as_str(),
            "bbc.co.uk"
        );
        assert_eq!(
            d.taxonomy.parent_of("cancer").map(|c| c.as_str()),
            Some("health & fitness")
        );
    }

    #[test]
    fn reports_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let t = Taxonomy::new(["news"]).unwrap();
        let p = dir.path().join("lexicon.tsv");
        fs::write(&p, "# c\nelection\t2.0\tnews:1\nbad line\n").unwrap();
        match load_lexicon(&p, &t) {
            Err(DataError::Invalid { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        fs::write(&p, "x\t1\tsports:1\n").unwrap();
        assert!(load_lexicon(&p, &t).is_err());
    }
}
