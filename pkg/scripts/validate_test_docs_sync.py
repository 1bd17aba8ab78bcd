#!/usr/bin/env python3
"""
Validate that docs/acceptance_scenarios_summary.md matches tests/test_acceptance_scenarios.py.

Checks:
1. Every acceptance test class and test method is documented
2. Every documented class/method still exists
3. Every acceptance test class carries @pytest.mark.slow

Run: python scripts/validate_test_docs_sync.py
"""

import ast
import re
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent.parent
TEST_FILE = PROJECT_ROOT / "tests" / "test_acceptance_scenarios.py"
DOC_FILE = PROJECT_ROOT / "docs" / "acceptance_scenarios_summary.md"


def collect_tests(test_file: Path) -> dict[str, list[str]]:
    """Test classes of the module mapped to their test_* methods."""
    tree = ast.parse(test_file.read_text())
    return {
        node.name: [item.name for item in node.body if isinstance(item, ast.FunctionDef) and item.name.startswith("test_")]
        for node in tree.body
        if isinstance(node, ast.ClassDef) and node.name.startswith("Test")
    }


def unmarked_classes(test_file: Path) -> list[str]:
    """Test classes without a ``@pytest.mark.slow`` decorator."""
    tree = ast.parse(test_file.read_text())
    missing = []
    for node in tree.body:
        if isinstance(node, ast.ClassDef) and node.name.startswith("Test"):
            decorators = {ast.unparse(decorator) for decorator in node.decorator_list}
            if "pytest.mark.slow" not in decorators:
                missing.append(node.name)
    return missing


def collect_documented(doc_file: Path) -> tuple[set[str], set[str]]:
    """Class and method names referenced as **Test Class** / **Test Method** entries."""
    content = doc_file.read_text()
    classes = set(re.findall(r"\*\*Test Class\*\*:\s*`(Test\w+)`", content))
    methods = set(re.findall(r"\*\*Test Method\*\*:\s*`(test_\w+)`", content))
    return classes, methods


def find_problems(test_file: Path = TEST_FILE, doc_file: Path = DOC_FILE) -> tuple[list[str], list[str]]:
    """Returns (errors, warnings)."""
    tests = collect_tests(test_file)
    methods = {name for names in tests.values() for name in names}
    doc_classes, doc_methods = collect_documented(doc_file)

    errors = [f"Missing class documentation: {name}" for name in sorted(tests.keys() - doc_classes)]
    errors += [f"Missing method documentation: {name}" for name in sorted(methods - doc_methods)]
    errors += [f"Acceptance class not marked slow: {name}" for name in unmarked_classes(test_file)]
    warnings = [f"Documented class no longer exists: {name}" for name in sorted(doc_classes - tests.keys())]
    warnings += [f"Documented method no longer exists: {name}" for name in sorted(doc_methods - methods)]
    return errors, warnings


def main() -> int:
    for path in (TEST_FILE, DOC_FILE):
        if not path.exists():
            print(f"File not found: {path}")
            return 1

    errors, warnings = find_problems()
    print(f"Acceptance docs sync: {TEST_FILE.name} <-> {DOC_FILE.name}")
    for error in errors:
        print(f"  ERROR   {error}")
    for warning in warnings:
        print(f"  WARNING {warning}")
    if not errors and not warnings:
        print("  all acceptance tests documented")
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
