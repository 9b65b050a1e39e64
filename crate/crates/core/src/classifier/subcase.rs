//! Separatrix-resolved subcase catalog (placeholder while the portrait engine lands).
