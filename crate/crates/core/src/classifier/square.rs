//! Square-portrait classes (placeholder while the portrait engine lands).
