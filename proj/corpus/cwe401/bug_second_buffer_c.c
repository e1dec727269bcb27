int cwe401_bug_second_buffer_c_main(int c) {
  char *a = calloc(4, 4);
  char *b = calloc(4, 4);
  a[0] = 1;
  b[0] = 2;
  free(a);
  return 0;
}
