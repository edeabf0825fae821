#pragma once

#include <string>

#include "fastlexrank/types.hpp"

namespace fastlexrank {

/// One row per document. `normalized` records whether every row has unit L2
/// norm; operations that rely on unit rows require the flag instead of
/// silently renormalizing.
struct EmbeddingMatrix {
    Matrix data;
    bool normalized = false;

    Index rows() const { return data.rows(); }
    Index cols() const { return data.cols(); }
};

enum class EmbeddingFormat { Csv, Fbin };

/// csv: one row per document, comma-separated decimal floats, no header.
/// fbin: magic "FLXR1\0", then n and d as unsigned 64-bit little-endian,
/// then n*d IEEE-754 32-bit little-endian floats, row-major.
EmbeddingMatrix load_embeddings(const std::string& path, EmbeddingFormat format);

/// csv values carry 9 significant digits; fbin narrows to 32-bit floats.
void save_embeddings(const Matrix& data, const std::string& path, EmbeddingFormat format);

/// Divides each row by its L2 norm. A zero row is an error naming the row:
/// it signals an empty or degenerate document upstream. Takes the matrix by
/// value so callers that std::move a large matrix normalize it in place
/// instead of holding two copies resident.
EmbeddingMatrix normalize_rows(EmbeddingMatrix matrix);

/// Column means of a unit-row matrix, i.e. the corpus mean embedding.
Vector mean_embedding(const EmbeddingMatrix& matrix);

}  // namespace fastlexrank
