/**
 * End-to-end against a real registry process: seed a collection with an
 * annotated service and its ontology, compose the canonical console query
 * (requested output Genre, hybrid with Monge-Elkan, weight 0.5, threshold
 * 0.5) and verify a rating-1.0 row with expandable reasons comes back,
 * with the draft surviving a URL round-trip unchanged.
 */

import { spawn, type ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync } from 'node:fs';
import { createServer } from 'node:net';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { Window } from 'happy-dom';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { RegistryClient } from '../src/api.js';
import { renderResultsTable } from '../src/components/resultsTable.js';
import { addConcept, draftFromParams, draftToParams, emptyDraft, matchRequestBody } from '../src/draft.js';

const BOOKS = 'http://example.org/books.owl';

const NOVEL_WSDL = `<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="NovelDefinitions"
    targetNamespace="http://example.org/novel"
    xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"
    xmlns:tns="http://example.org/novel"
    xmlns:xsd="http://www.w3.org/2001/XMLSchema"
    xmlns:sawsdl="http://www.w3.org/ns/sawsdl">
  <wsdl:message name="GetGenreRequest">
    <wsdl:part name="author" type="xsd:string" sawsdl:modelReference="${BOOKS}#Author"/>
  </wsdl:message>
  <wsdl:message name="GetGenreResponse">
    <wsdl:part name="_GENRE" type="xsd:string" sawsdl:modelReference="${BOOKS}#Genre"/>
  </wsdl:message>
  <wsdl:portType name="NovelAuthorGenreSoap">
    <wsdl:operation name="get_AUTHOR_GENRE">
      <wsdl:input message="tns:GetGenreRequest"/>
      <wsdl:output message="tns:GetGenreResponse"/>
    </wsdl:operation>
  </wsdl:portType>
  <wsdl:service name="novel_authorgenre_service"/>
</wsdl:definitions>
`;

const BOOKS_OWL = `<?xml version="1.0"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
    xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"
    xmlns:owl="http://www.w3.org/2002/07/owl#">
  <owl:Class rdf:about="${BOOKS}#Genre"/>
  <owl:Class rdf:about="${BOOKS}#Author"/>
  <owl:Class rdf:about="${BOOKS}#Science_Fiction">
    <rdfs:subClassOf rdf:resource="${BOOKS}#Genre"/>
  </owl:Class>
</rdf:RDF>
`;

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.listen(0, '127.0.0.1', () => {
      const address = probe.address();
      if (address && typeof address === 'object') {
        const port = address.port;
        probe.close(() => resolve(port));
      } else {
        probe.close(() => reject(new Error('no port')));
      }
    });
  });
}

async function waitForHealthy(client: RegistryClient, timeoutMs = 20000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      await client.healthz();
      return;
    } catch (error) {
      lastError = error;
      await new Promise((r) => setTimeout(r, 150));
    }
  }
  throw new Error(`registry did not come up: ${lastError}`);
}

describe('console against a seeded registry', () => {
  let server: ChildProcess;
  let dataDir: string;
  let client: RegistryClient;
  let collectionId: string;

  beforeAll(async () => {
    const port = await freePort();
    dataDir = mkdtempSync(join(tmpdir(), 'sawmatch-e2e-'));
    server = spawn(
      'python3',
      ['-m', 'sawmatch', 'serve', '--data', dataDir, '--listen', `127.0.0.1:${port}`],
      { stdio: 'ignore' },
    );
    client = new RegistryClient(`http://127.0.0.1:${port}`, (...args) => fetch(...args));
    await waitForHealthy(client);

    ({ id: collectionId } = await client.createCollection('seed', 'e2e seed', 'tester'));
    await client.uploadServiceFile(collectionId, new Blob([NOVEL_WSDL]), 'novel_authorgenre_service.wsdl');
    await client.uploadOntologyFile(new Blob([BOOKS_OWL]), 'books.owl');
  }, 40000);

  afterAll(() => {
    server?.kill();
    if (dataDir) rmSync(dataDir, { recursive: true, force: true });
  });

  it('genre query returns a justified rating-1.0 row and renders it', async () => {
    let draft = { ...emptyDraft(), collectionId };
    draft = addConcept(draft, 'outputs', `${BOOKS}#Genre`);
    // hybrid-me, weight 0.5, threshold 0.5 are the draft defaults

    const rows = await client.runMatch(matchRequestBody(draft));
    expect(rows.length).toBe(1);
    const top = rows[0];
    expect(top.rating).toBe(1.0);
    expect(top.operation).toBe('get_AUTHOR_GENRE');
    expect(top.interface).toBe('NovelAuthorGenreSoap');
    expect(top.tier).toBe('Normal');
    expect(top.justifications.length).toBeGreaterThan(0);
    expect(top.justifications[0].match_case).toBe('Exact');

    // render through the real component in a DOM
    const window = new Window();
    (globalThis as Record<string, unknown>).document = window.document;
    try {
      const table = renderResultsTable(rows);
      window.document.body.appendChild(table as never);
      const rating = window.document.querySelector('td.rating');
      expect(rating?.textContent).toBe('1.0');
      const button = window.document.querySelector('button.get-reasons') as unknown as HTMLButtonElement;
      button.click();
      const reasons = window.document.querySelector('tr.reasons-row') as unknown as HTMLTableRowElement;
      expect(reasons.style.display).toBe('');
      expect(reasons.textContent).toContain('Exact');
    } finally {
      delete (globalThis as Record<string, unknown>).document;
    }
  });

  it('draft URL round-trip produces an identical request body', async () => {
    let draft = { ...emptyDraft(), collectionId };
    draft = addConcept(draft, 'outputs', `${BOOKS}#Genre`);

    const restored = draftFromParams(new URLSearchParams(draftToParams(draft).toString()));
    expect(matchRequestBody(restored)).toEqual(matchRequestBody(draft));

    // both bodies produce byte-identical responses from the live service
    const first = await client.runMatch(matchRequestBody(draft));
    const second = await client.runMatch(matchRequestBody(restored));
    expect(second).toEqual(first);
  });

  it('server validation errors surface as field messages', async () => {
    const draft = { ...emptyDraft(), collectionId };
    const failure = await client.runMatch(matchRequestBody(draft)).catch((e) => e);
    expect(failure.errors?.[0]?.field).toBe('inputs');
  });
});
