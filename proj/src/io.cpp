#include "schurkit/io.hpp"

#include <fstream>
#include <sstream>

namespace schurkit {

namespace {

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<int> dims_from_json(const Json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].empty())
        throw parse_error("matrix document: \"" + key + "\" must be a non-empty array");
    std::vector<int> dims;
    for (const auto& d : j[key]) {
        if (!d.is_number_integer() || d.get<int>() < 1)
            throw parse_error("matrix document: \"" + key + "\" entries must be positive integers");
        dims.push_back(d.get<int>());
    }
    return dims;
}

Matrix matrix_from_json(const Json& block, int rows, int cols, std::size_t index) {
    const std::string where = "block " + std::to_string(index);
    if (!block.is_array() || static_cast<int>(block.size()) != rows)
        throw parse_error("matrix document: " + where + " must have " + std::to_string(rows) +
                          " rows");
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const auto& row = block[r];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw parse_error("matrix document: " + where + " row " + std::to_string(r) +
                              " must have " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            const auto& entry = row[c];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number())
                throw parse_error("matrix document: " + where + " entry (" + std::to_string(r) +
                                  ", " + std::to_string(c) + ") must be an [re, im] pair");
            m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

} // namespace

Json to_json(const BlockMatrix& a) {
    Json j;
    j["row_dims"] = a.row_dims();
    j["col_dims"] = a.col_dims();
    Json blocks = Json::array();
    for (int i = 0; i < a.grid_rows(); ++i)
        for (int jj = 0; jj < a.grid_cols(); ++jj)
            blocks.push_back(matrix_to_json(a.block(i, jj)));
    j["blocks"] = std::move(blocks);
    return j;
}

Json to_json(const ScalarMatrix& s) {
    return to_json(BlockMatrix::from_scalar(s));
}

Json to_json(const BlockDiagonal& d) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(d.size()) * d.size());
    for (int i = 0; i < d.size(); ++i)
        for (int j = 0; j < d.size(); ++j)
            blocks.push_back(i == j ? d.block(i)
                                    : Matrix(Matrix::Zero(d.dims()[i], d.dims()[j])));
    return to_json(BlockMatrix(d.dims(), d.dims(), std::move(blocks)));
}

BlockMatrix block_matrix_from_json(const Json& j) {
    if (!j.is_object())
        throw parse_error("matrix document: expected a JSON object");
    std::vector<int> row_dims = dims_from_json(j, "row_dims");
    std::vector<int> col_dims = dims_from_json(j, "col_dims");
    if (!j.contains("blocks") || !j["blocks"].is_array())
        throw parse_error("matrix document: \"blocks\" must be an array");
    const auto& blocks_json = j["blocks"];
    const std::size_t expected = row_dims.size() * col_dims.size();
    if (blocks_json.size() != expected)
        throw parse_error("matrix document: got " + std::to_string(blocks_json.size()) +
                          " blocks, dimension signatures need " + std::to_string(expected));
    std::vector<Matrix> blocks;
    blocks.reserve(expected);
    for (std::size_t k = 0; k < expected; ++k) {
        const int i = static_cast<int>(k / col_dims.size());
        const int jj = static_cast<int>(k % col_dims.size());
        blocks.push_back(matrix_from_json(blocks_json[k], row_dims[i], col_dims[jj], k));
    }
    return BlockMatrix(std::move(row_dims), std::move(col_dims), std::move(blocks));
}

ScalarMatrix scalar_matrix_from_json(const Json& j) {
    BlockMatrix grid = block_matrix_from_json(j);
    int h = 0;
    if (!grid.uniform_block_dim(&h) || h != 1)
        throw parse_error("matrix document: scalar matrix requires all dimensions 1");
    Matrix m(grid.grid_rows(), grid.grid_cols());
    for (int i = 0; i < grid.grid_rows(); ++i)
        for (int jj = 0; jj < grid.grid_cols(); ++jj)
            m(i, jj) = grid.block(i, jj)(0, 0);
    return ScalarMatrix(std::move(m));
}

Json diagnostics_json(const DecompositionReport& report) {
    Json j;
    j["middle_norm"] = report.middle_norm;
    j["reconstruction_error_abs"] = report.reconstruction_error_abs;
    j["reconstruction_error_rel"] = report.reconstruction_error_rel;
    j["max_partial_isometry_residual"] = report.max_partial_isometry_residual;
    return j;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

BlockMatrix load_block_matrix(const std::string& path) {
    return block_matrix_from_json(load_json(path));
}

} // namespace schurkit
