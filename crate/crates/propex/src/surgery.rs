//! Internal tree-editing helpers for the splitting stages: removing
//! subtrees, tidying the punctuation they leave behind, and rewrapping the
//! result as a standalone sentence.

use crate::pattern::TreePath;
use crate::tree::ParseTree;

/// Mutable counterpart of [`crate::pattern::node_at`].
pub(crate) fn node_at_mut<'t>(root: &'t mut ParseTree, path: &[usize]) -> &'t mut ParseTree {
    let mut node = root;
    for &i in path {
        node = &mut node.children[i];
    }
    node
}

/// Sentence-level punctuation that never survives at a clause boundary.
pub(crate) fn is_separator_label(label: &str) -> bool {
    matches!(label, "," | ":" | ";")
}

/// Removes the subtrees at the given paths. Paths nested inside another
/// removed path are covered by the outer removal and skipped.
pub(crate) fn remove_paths(tree: &mut ParseTree, paths: &[TreePath]) {
    let mut sorted: Vec<&TreePath> = paths.iter().filter(|p| !p.is_empty()).collect();
    sorted.sort();
    sorted.dedup();
    // Remove right-to-left and bottom-up so earlier removals cannot shift
    // the indices a later path relies on.
    for path in sorted.iter().rev() {
        if sorted
            .iter()
            .any(|other| other.len() < path.len() && path.starts_with(other.as_slice()))
        {
            continue;
        }
        remove_at(tree, path);
    }
}

fn remove_at(tree: &mut ParseTree, path: &[usize]) {
    if path.len() == 1 {
        if path[0] < tree.children.len() {
            tree.children.remove(path[0]);
        }
        return;
    }
    if let Some(child) = tree.children.get_mut(path[0]) {
        remove_at(child, &path[1..]);
    }
}

/// Drops internal nodes that lost all their children to a removal.
pub(crate) fn prune_empty(tree: &mut ParseTree) {
    tree.children.retain_mut(|child| {
        prune_empty(child);
        child.token.is_some() || !child.children.is_empty()
    });
}

/// Tidies the top-level child list of a rebuilt sentence: separators cannot
/// lead or trail the clause, double up, or sit directly before the final
/// sentence punctuation.
pub(crate) fn cleanup_sentence(tree: &mut ParseTree) {
    while tree
        .children
        .first()
        .is_some_and(|c| is_separator_label(&c.label))
    {
        tree.children.remove(0);
    }
    let mut i = 1;
    while i < tree.children.len() {
        let dup = is_separator_label(&tree.children[i].label)
            && is_separator_label(&tree.children[i - 1].label);
        if dup {
            tree.children.remove(i);
        } else {
            i += 1;
        }
    }
    // A separator directly before the closing punctuation, or at the end.
    loop {
        let n = tree.children.len();
        if n >= 2
            && is_separator_label(&tree.children[n - 2].label)
            && matches!(tree.children[n - 1].label.as_str(), "." | "!" | "?")
        {
            tree.children.remove(n - 2);
            continue;
        }
        if n >= 1 && is_separator_label(&tree.children[n - 1].label) {
            tree.children.remove(n - 1);
            continue;
        }
        break;
    }
}

/// Wraps a constituent as a standalone sentence unless it already is one.
pub(crate) fn ensure_sentence(tree: ParseTree) -> ParseTree {
    if matches!(tree.label.as_str(), "S" | "SINV" | "SQ" | "SBARQ") {
        tree
    } else {
        ParseTree::node("S", vec![tree])
    }
}

/// Standard post-edit normalization: prune, tidy, renumber.
pub(crate) fn finish_sentence(mut tree: ParseTree) -> ParseTree {
    prune_empty(&mut tree);
    cleanup_sentence(&mut tree);
    tree.reindex();
    tree
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_ptb;

    #[test]
    fn removes_disjoint_paths_right_to_left() {
        let mut tree = parse_ptb("(S (A (X x)) (B (Y y)) (C (Z z)))").unwrap();
        remove_paths(&mut tree, &[vec![0], vec![2]]);
        assert_eq!(tree.to_string(), "(S (B (Y y)))");
    }

    #[test]
    fn nested_removal_is_covered_by_outer() {
        let mut tree = parse_ptb("(S (A (X x) (Y y)) (B (Z z)))").unwrap();
        remove_paths(&mut tree, &[vec![0], vec![0, 1]]);
        assert_eq!(tree.to_string(), "(S (B (Z z)))");
    }

    #[test]
    fn prunes_emptied_wrappers() {
        let mut tree = parse_ptb("(S (VP (VB go) (PP (IN to) (NP (NN town)))))").unwrap();
        remove_paths(&mut tree, &[vec![0, 1, 1]]);
        // The PP kept its preposition, so it survives; now remove that too.
        remove_paths(&mut tree, &[vec![0, 1, 0]]);
        prune_empty(&mut tree);
        assert_eq!(tree.to_string(), "(S (VP (VB go)))");
    }

    #[test]
    fn cleanup_drops_orphaned_separators() {
        let mut tree = parse_ptb("(S (, ,) (NP (NN x)) (, ,) (, ,) (VP (VB y)) (, ,) (. .))").unwrap();
        cleanup_sentence(&mut tree);
        assert_eq!(tree.to_string(), "(S (NP (NN x)) (, ,) (VP (VB y)) (. .))");
    }

    #[test]
    fn wraps_non_sentences() {
        let vp = parse_ptb("(VP (VB run))").unwrap();
        assert_eq!(ensure_sentence(vp).label, "S");
        let s = parse_ptb("(S (NP (NN x)) (VP (VB y)))").unwrap();
        assert_eq!(ensure_sentence(s).to_string(), "(S (NP (NN x)) (VP (VB y)))");
    }
}
