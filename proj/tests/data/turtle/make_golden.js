#!/usr/bin/env node
// Independent oracle for the Turtle parser tests. Parses each fixture with
// the n3 library and emits a canonical listing: one sorted line per triple,
//   <subject>\t<predicate>\t<object>
// IRIs as <...>, blank nodes as _:label (n3's bN_ document prefix stripped),
// literals as "escaped"@lang or "escaped"^^<datatype> (plain strings get an
// explicit xsd:string datatype). Run once to freeze .golden files:
//   node make_golden.js basic.ttl literals.ttl numbers.ttl blanks.ttl
//
// The .golden files are committed; the C++ tests must reproduce them
// byte-for-byte from the same .ttl inputs.

const fs = require('fs');
const path = require('path');
const N3 = require('n3');

const XSD_STRING = 'http://www.w3.org/2001/XMLSchema#string';
const LANG_STRING = 'http://www.w3.org/1999/02/22-rdf-syntax-ns#langString';

function escapeLiteral(value) {
  let out = '';
  for (const ch of value) {
    const code = ch.codePointAt(0);
    if (ch === '\\') out += '\\\\';
    else if (ch === '"') out += '\\"';
    else if (ch === '\n') out += '\\n';
    else if (ch === '\r') out += '\\r';
    else if (ch === '\t') out += '\\t';
    else if (code < 0x20) out += '\\u00' + code.toString(16).toUpperCase().padStart(2, '0');
    else out += ch;
  }
  return out;
}

function renderTerm(term) {
  if (term.termType === 'NamedNode') return '<' + term.value + '>';
  if (term.termType === 'BlankNode') return '_:' + term.value.replace(/^b\d+_/, '');
  if (term.termType === 'Literal') {
    const quoted = '"' + escapeLiteral(term.value) + '"';
    if (term.language) return quoted + '@' + term.language;
    const dt = term.datatype && term.datatype.value ? term.datatype.value : XSD_STRING;
    if (dt === LANG_STRING) throw new Error('langString without language tag');
    return quoted + '^^<' + dt + '>';
  }
  throw new Error('unsupported term type: ' + term.termType);
}

for (const file of process.argv.slice(2)) {
  const text = fs.readFileSync(file, 'utf8');
  const quads = new N3.Parser({ format: 'Turtle' }).parse(text);
  const lines = quads.map(
    (q) => renderTerm(q.subject) + '\t' + renderTerm(q.predicate) + '\t' + renderTerm(q.object)
  );
  lines.sort();
  const unique = lines.filter((line, i) => i === 0 || line !== lines[i - 1]);
  const out = file.replace(/\.ttl$/, '.golden');
  fs.writeFileSync(out, unique.join('\n') + '\n');
  console.log(`${path.basename(out)}: ${unique.length} triples`);
}
