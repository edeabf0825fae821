#include "fastlexrank/embeddings.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace fastlexrank {

namespace {

constexpr std::array<char, 6> kFbinMagic = {'F', 'L', 'X', 'R', '1', '\0'};

static_assert(std::endian::native == std::endian::little,
              "fbin I/O assumes a little-endian host");

double parse_double(std::string_view field, std::size_t row) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw DataError("csv row " + std::to_string(row) + ": cannot parse value '" +
                        std::string(field) + "'");
    }
    return value;
}

EmbeddingMatrix load_csv(std::istream& in, const std::string& path) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            std::string_view field(line.data() + start,
                                   (comma == std::string::npos ? line.size() : comma) - start);
            row.push_back(parse_double(field, lineno));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw DataError(path + ": ragged csv: row " + std::to_string(lineno) + " has " +
                            std::to_string(row.size()) + " columns, expected " +
                            std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("embedding file is empty: " + path);

    EmbeddingMatrix matrix;
    matrix.data.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            matrix.data(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
        }
    }
    return matrix;
}

EmbeddingMatrix load_fbin(std::istream& in, const std::string& path) {
    std::array<char, 6> magic{};
    in.read(magic.data(), magic.size());
    if (in.gcount() != static_cast<std::streamsize>(magic.size()) || magic != kFbinMagic) {
        throw DataError(path + ": not an fbin embedding file (bad magic)");
    }
    std::uint64_t n = 0, d = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    in.read(reinterpret_cast<char*>(&d), sizeof(d));
    if (!in) throw DataError(path + ": truncated fbin header");
    if (n == 0 || d == 0) throw DataError(path + ": fbin dimensions must be positive");

    EmbeddingMatrix matrix;
    matrix.data.resize(static_cast<Index>(n), static_cast<Index>(d));

    // Chunked read keeps the float32 staging buffer small for large files.
    constexpr std::size_t kChunkFloats = 1 << 18;
    std::vector<float> chunk(kChunkFloats);
    const std::uint64_t total = n * d;
    double* out = matrix.data.data();
    std::uint64_t done = 0;
    while (done < total) {
        const std::size_t want =
            static_cast<std::size_t>(std::min<std::uint64_t>(kChunkFloats, total - done));
        in.read(reinterpret_cast<char*>(chunk.data()),
                static_cast<std::streamsize>(want * sizeof(float)));
        const std::size_t got = static_cast<std::size_t>(in.gcount()) / sizeof(float);
        if (got < want) {
            throw DataError(path + ": truncated fbin payload: expected " + std::to_string(total) +
                            " floats, file ends after " + std::to_string(done + got));
        }
        for (std::size_t k = 0; k < want; ++k) out[done + k] = static_cast<double>(chunk[k]);
        done += want;
    }
    char extra = 0;
    if (in.read(&extra, 1); in.gcount() != 0) {
        throw DataError(path + ": trailing data after fbin payload");
    }
    return matrix;
}

void check_finite(const EmbeddingMatrix& matrix, const std::string& path) {
    for (Index i = 0; i < matrix.rows(); ++i) {
        if (!matrix.data.row(i).allFinite()) {
            throw DataError(path + ": non-finite value in row " + std::to_string(i + 1));
        }
    }
}

}  // namespace

EmbeddingMatrix load_embeddings(const std::string& path, EmbeddingFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open embedding file: " + path);

    EmbeddingMatrix matrix =
        format == EmbeddingFormat::Csv ? load_csv(in, path) : load_fbin(in, path);
    check_finite(matrix, path);
    matrix.normalized = false;
    return matrix;
}

void save_embeddings(const Matrix& data, const std::string& path, EmbeddingFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + path);

    if (format == EmbeddingFormat::Csv) {
        char buf[64];
        for (Index i = 0; i < data.rows(); ++i) {
            for (Index j = 0; j < data.cols(); ++j) {
                std::snprintf(buf, sizeof(buf), "%.9g", data(i, j));
                if (j) out << ',';
                out << buf;
            }
            out << '\n';
        }
        return;
    }

    out.write(kFbinMagic.data(), kFbinMagic.size());
    const std::uint64_t n = static_cast<std::uint64_t>(data.rows());
    const std::uint64_t d = static_cast<std::uint64_t>(data.cols());
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(&d), sizeof(d));
    std::vector<float> row(static_cast<std::size_t>(data.cols()));
    for (Index i = 0; i < data.rows(); ++i) {
        for (Index j = 0; j < data.cols(); ++j) row[static_cast<std::size_t>(j)] = static_cast<float>(data(i, j));
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!out) throw DataError("write failed: " + path);
}

EmbeddingMatrix normalize_rows(EmbeddingMatrix matrix) {
    for (Index i = 0; i < matrix.rows(); ++i) {
        const double norm = matrix.data.row(i).norm();
        if (norm == 0.0) {
            throw DataError("cannot normalize zero embedding row " + std::to_string(i) +
                            " (empty or degenerate document)");
        }
        matrix.data.row(i) /= norm;
    }
    matrix.normalized = true;
    return matrix;
}

Vector mean_embedding(const EmbeddingMatrix& matrix) {
    if (!matrix.normalized) {
        throw DataError("mean_embedding requires unit-normalized rows; call normalize_rows first");
    }
    return matrix.data.colwise().sum().transpose() / static_cast<double>(matrix.rows());
}

}  // namespace fastlexrank
