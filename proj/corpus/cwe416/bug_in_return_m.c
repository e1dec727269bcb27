int cwe416_bug_in_return_m_main(int c) {
  int *v = malloc(16);
  v[0] = c;
  free(v);
  return v[0];
}
