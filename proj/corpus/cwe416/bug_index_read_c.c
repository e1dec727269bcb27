int cwe416_bug_index_read_c_main(int c) {
  char *p = calloc(4, 4);
  p[0] = 3;
  free(p);
  int x = p[0];
  return x;
}
