int cwe416_bug_index_read_m_main(int c) {
  char *p = malloc(16);
  p[0] = 3;
  free(p);
  int x = p[0];
  return x;
}
